from .decoder import EdgeScores, decode, score_edges
from .features import TEMPLATE_VERSION, bucket_distance, extract_edge_features
from .mira import train_mira
from .model import (
    ModelMeta,
    ParserModel,
    load_model,
    open_model,
    save_model,
    write_model,
)
from .parser import parse_sentence, parse_tree, parse_treebank
