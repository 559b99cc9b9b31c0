from .combination import (
    combine_parses,
    combine_treebanks,
    concat_treebanks,
    transfer_tree_combination,
)
from .interpolation import (
    interpolate,
    interpolate_sources,
    normalize_model,
    transfer_model_interpolation,
)
from .oracle import oracle_source
from .similarity import (
    ikl_weights,
    kl_cpos3,
    select_source,
    similarity_matrix,
    trigram_distribution,
    weight_ikl,
    weight_matrix,
)
