"""Top-down mapping of a university's internal structure from publication address data.

The package turns a corpus of bibliographic records into parsed
organizational units, a weighted unit co-occurrence network with betweenness
centrality, and per-unit research profiles with Gini concentration
indicators under a fine-grained and an aggregated subject classification.
"""

from .addresses import (
    AddressParse,
    is_university_only,
    normalize_address,
    parse_address,
    split_addresses,
)
from .corpus import (
    DEFAULT_DOC_TYPES,
    DOC_TYPES,
    BibRecord,
    CorpusError,
    InstitutionMatcher,
    filter_doc_types,
    load_corpus,
    load_institution_variants,
    normalize_doc_type,
    select_institution_addresses,
)
from .network import (
    OrgNetwork,
    apply_threshold,
    build_network,
    compute_betweenness,
    connected_components,
    export_graph,
    read_graphml,
)
from .pipeline import PipelineConfig, PipelineError, RunReport, run_pipeline, validate_config
from .profiles import (
    ClassificationSystem,
    ProfileVector,
    UnitIndicators,
    aggregate_classification,
    build_profile,
    field_count,
    gini,
    indicator_table,
    load_category_mapping,
    load_classification,
)
from .units import (
    UNIT_TYPES,
    AliasTable,
    AliasTableError,
    CanonicalUnit,
    TypeRuleSet,
    dedupe_units,
    publication_share,
    suggest_aliases,
    type_distribution,
)

__version__ = "0.1.0"
