from .splitter import (
    compare_with_prediction,
    is_pseudoprojective,
    predict_syzygy_split,
    split_projectives,
    SplitConfig,
    SplitResult,
    SyzygyPrediction,
)
