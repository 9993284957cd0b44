"""BI-RADS terminology normalization and findings/conclusion consistency
checking for mammography reports.

Pipeline: parse a sectioned report, detect unsanctioned descriptors and
misspellings, summarize findings into per-category centroid vectors
(ATF/IDF term statistics, representative sentences, chunk patterns),
score new reports against all seven category centroids by bipartite
semantic matching, and flag reports whose radiologist-assigned category
disagrees with the inferred one.
"""

from ._kernels import HAVE_NATIVE, IMPLEMENTATION
from .classifier import (
    ConsistencyVerdict,
    ModelBundle,
    Scorecard,
    check_consistency,
    classify,
    load_model,
    save_model,
    train,
)
from .corpus import (
    LabeledCorpus,
    Report,
    Sentence,
    Token,
    load_corpus,
    parse_report,
    split_train_test,
    tokenize,
)
from .errors import BiradsError
from .lexicon import Lexicon, LexicalResource, load_lexicon, load_synsets
from .normalizer import (
    Detection,
    PatternAutomaton,
    apply_replacements,
    build_automaton,
    detect_unsanctioned,
    edit_distance,
    suggest_spelling,
)
from .resources import Resources, load_resources
from .similarity import (
    AggregationWeights,
    max_weight_matching,
    report_category_similarity,
    sentence_similarity,
    word_similarity,
)
from .summarizer import (
    CentroidVector,
    SummarizerConfig,
    add_report,
    build_centroid,
    select_representatives,
    term_stats,
)

__version__ = "0.1.0"
