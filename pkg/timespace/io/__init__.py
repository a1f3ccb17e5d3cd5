"""File formats shared by the pipeline stages."""

from timespace.io.manifest import read_focal, read_yaml, sidecar_path, write_intrinsics, write_manifest
from timespace.io.tables import (
    EMBEDDED_HEADER,
    INVARIANTS_HEADER,
    LABEL_OK,
    LABEL_TOO_SHORT,
    LABELS_HEADER,
    TRACKS_HEADER,
    InvariantRecord,
    LabelRecord,
    read_invariants,
    read_labels,
    read_tracks,
    write_embedded,
    write_invariants,
    write_labels,
    write_tracks,
)

__all__ = [
    "EMBEDDED_HEADER",
    "INVARIANTS_HEADER",
    "LABEL_OK",
    "LABEL_TOO_SHORT",
    "LABELS_HEADER",
    "TRACKS_HEADER",
    "InvariantRecord",
    "LabelRecord",
    "read_focal",
    "read_invariants",
    "read_labels",
    "read_tracks",
    "read_yaml",
    "sidecar_path",
    "write_embedded",
    "write_intrinsics",
    "write_invariants",
    "write_labels",
    "write_manifest",
    "write_tracks",
]
