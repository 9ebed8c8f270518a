"""Built-in schema presets."""

from __future__ import annotations

from .errors import ConfigError
from .tabular import ColumnKind, Schema

_N = ColumnKind.NUMERIC
_C = ColumnKind.CATEGORICAL

# 2018 dental-provider utilization table: 20 features plus the binary
# provider-type target (standard rendering vs safety-net clinic).
DENTAL2018 = Schema(
    column_specs=(
        ("RENDERING_NPI", _N),
        ("CALENDAR_YEAR", _N),
        ("DELIVERY_SYSTEM", _C),
        ("AGE_GROUP", _C),
        ("ADV_USER_CNT", _N),
        ("ADV_USER_ANNOTATION_CODE", _C),
        ("ADV_SVC_CNT", _N),
        ("ADV_SVC_ANNOTATION_CODE", _C),
        ("PREV_USER_CNT", _N),
        ("PREV_USER_ANNOTATION_CODE", _C),
        ("PREV_SVC_CNT", _N),
        ("PREV_SVC_ANNOTATION_CODE", _C),
        ("TXMT_USER_CNT", _N),
        ("TXMT_USER_ANNOTATION_CODE", _C),
        ("TXMT_SVC_CNT", _N),
        ("TXMT_SVC_ANNOTATION_CODE", _C),
        ("EXAM_USER_CNT", _N),
        ("EXAM_USER_ANNOTATION_CODE", _C),
        ("EXAM_SVC_CNT", _N),
        ("EXAM_SVC_ANNOTATION_CODE", _C),
        ("PROVIDER_TYPE", _C),
    ),
    target_name="PROVIDER_TYPE",
    positive_label="Rendering SNC",
    missing_tokens=frozenset({"", "NA"}),
    target_labels=("Rendering", "Rendering SNC"),
)

PRESETS = {"dental2018": DENTAL2018}


def get_preset(name: str) -> Schema:
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; available: {sorted(PRESETS)}")
    return PRESETS[name]
