"""Certificates for CLP programs over the Def groundness domain."""

from ._acc import (  # noqa: F401
    CorruptState,
    DefValue,
    Error,
    ParseError,
    PatchConflict,
    Program,
    Update,
    certify,
    check,
    diff,
    ext_certify,
    inc_check,
    patch,
)
