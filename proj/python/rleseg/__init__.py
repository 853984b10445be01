"""Text-line separator points from run-length compressed binary documents."""

import json as _json

from ._rleseg import (
    DetectionParams,
    InvalidInput,
    InvalidSpec,
    ParseError,
    RleDocument,
    UnsupportedFormat,
    __version__,
    decode_image,
    decode_row,
    default_threshold,
    detect_bands,
    detect_mask,
    detection_rate,
    encode_image,
    encode_row,
    expected_point_count,
    left_column,
    match_points,
    read_rle_csv,
    right_column,
    write_rle_csv,
)
from . import _rleseg


def segment(doc, params=None, sides="both", enable_insertion=True, enable_deletion=True):
    """Run the separator pipeline on an RleDocument; returns the JSON report as a dict."""
    if params is None:
        params = DetectionParams()
    return _json.loads(
        _rleseg._segment_json(doc, params, sides, enable_insertion, enable_deletion)
    )


def generate_page(seed, touch_at_left=False, concave_sliver=False, left_indent=False):
    """Random synthetic page: (pixels, spec dict, [left truth, right truth])."""
    pixels, spec, truth = _rleseg._generate_page_json(
        seed, touch_at_left, concave_sliver, left_indent
    )
    return pixels, _json.loads(spec), _json.loads(truth)


__all__ = [
    "DetectionParams",
    "InvalidInput",
    "InvalidSpec",
    "ParseError",
    "RleDocument",
    "UnsupportedFormat",
    "decode_image",
    "decode_row",
    "default_threshold",
    "detect_bands",
    "detect_mask",
    "detection_rate",
    "encode_image",
    "encode_row",
    "expected_point_count",
    "generate_page",
    "left_column",
    "match_points",
    "read_rle_csv",
    "right_column",
    "segment",
    "write_rle_csv",
]
