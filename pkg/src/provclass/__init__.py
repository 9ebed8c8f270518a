"""provclass: schema-driven tabular classification with feature ranking.

Pipeline pieces: CSV ingestion against a declared schema, median/mode
imputation, SMOTE oversampling, seven filter scorers with a consensus
ranking, twelve classifiers behind one train/predict contract, stratified
cross-validation, and the incremental feature-subset accuracy sweep.
"""

from .errors import (
    BoundsError,
    ConfigError,
    ConvergenceWarning,
    DomainError,
    FitError,
    KindMismatchError,
    MissingValuesError,
    ParseError,
    ProvclassError,
    ResampleError,
    SchemaError,
    UnsupportedError,
    ValidationError,
)
from .evaluation import (
    AccuracyMatrix,
    CVResult,
    GridSearchResult,
    PipelineOptions,
    cross_validate,
    grid_search,
    sweep,
)
from .ingest import Imputer, apply_imputer, fit_imputer, load_schema, load_table, save_schema
from .metrics import ConfusionMatrix, auc, confusion, scores
from .models import (
    ClassifierSpec,
    TrainedModel,
    default_specs,
    load_model,
    numeric_gradient_check,
    predict_labels,
    predict_proba,
    save_model,
    train,
)
from .presets import PRESETS, get_preset
from .ranking import (
    ContingencyTable,
    RankingTable,
    ScorerConfig,
    anova_f,
    build_ranking,
    chi_square,
    contingency,
    discretize,
    entropy,
    fcbf,
    gain_ratio,
    gini_gain,
    information_gain,
    relieff,
    symmetric_uncertainty,
)
from .resampling import FoldPlan, smote, smote_with_provenance, stratified_kfold
from .synthetic import make_synthetic_table
from .tabular import (
    Column,
    ColumnKind,
    DataTable,
    EncodedMatrix,
    EncodingRecipe,
    Schema,
    categorical_column,
    encode_for_model,
    numeric_column,
    select_top_features,
    value_counts,
)

__version__ = "0.1.0"
