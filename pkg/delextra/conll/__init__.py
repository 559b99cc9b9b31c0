from .io import (
    ConllReader,
    adposition_ratio,
    fold_upos,
    open_treebank,
    read_treebank,
    save_treebank,
    select_treebanks,
    treebank_statistics,
    write_treebank,
)
from .trees import is_tree, validate_tree
