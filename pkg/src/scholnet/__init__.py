"""Top-collaborator influence analytics for bibliographic corpora."""

from .corpus import (
    Author,
    Corpus,
    FilterConfig,
    Paper,
    author_birth_year,
    author_citations,
    author_collaborators,
    author_papers,
    build_corpus,
    filter_corpus,
    load_corpus,
)
from .counterfactual import (
    CounterfactualRecord,
    MetricSnapshot,
    counterfactual_author,
    counterfactual_rankings,
    reduced_paper_set,
)
from .estimators import (
    CorpusFilter,
    FieldAssigner,
    InfluenceNetworkBuilder,
    MetricsTable,
    TopCollaboratorCounterfactual,
)
from .exceptions import (
    ConfigError,
    CorpusParseError,
    DomainError,
    HierarchyError,
    NotFoundError,
    ScholnetError,
)
from .fields import (
    FieldAssignment,
    FieldHierarchy,
    FieldNode,
    assign_fields,
    author_field_weights,
    author_primary_field,
    load_hierarchy,
    paper_field_weights,
    parents_of,
)
from .influence import (
    InfluenceNetwork,
    WeightKind,
    build_influence_network,
    influence_weight,
    top_collaborator,
    top_influence,
)
from .metrics import Metric, compare_h_sequences, extended_h_index, h_index, rank_authors
from .report import (
    CdfSeries,
    FieldSummary,
    birth_year_cdf,
    cdf,
    field_summary_table,
    influence_age_correlation,
    median,
    team_size_distribution,
    trimmed_mean,
)
from .synth import FieldSpec, SynthParams, generate_synthetic_corpus

__version__ = "0.1.0"
