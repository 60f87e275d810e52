"""Spectral decomposition plus a coarse-to-fine trained neural predictor for
long-term univariate forecasting."""

from .curriculum import (
    CurriculumResult,
    CurriculumSchedule,
    StageParams,
    TrainingStage,
    baseline_train,
    compare_curriculum_baseline,
    curriculum_train,
    default_schedule,
    error_vs_pc_curve,
)
from .forecast import ForecastMetrics, ForecastResult, evaluate, forecast_series, multi_step_predict, one_step_predict
from .mlp import Network, backprop_gradient, forward, gd_step, init_network, mse, train
from .series import (
    EmbeddingDataset,
    RawSeries,
    SplitDataset,
    StandardizedSeries,
    build_embedding,
    destandardize,
    load_csv,
    split_validation,
    standardize,
)
from .ssa import (
    ComponentSet,
    SingularSpectrum,
    ToeplitzCorrelation,
    decompose,
    eigendecompose,
    lag_correlation,
    partial_reconstruction,
    principal_components,
    reconstruct_component,
    singular_spectrum_plot_data,
)

__version__ = "0.1.0"
