"""Exact-arithmetic bounded double complexes.

Thin wrapper over the C++ core: build the invariant-forms presets, read and
write complex documents, and query spectral pages, cohomology tables and
summand censuses.
"""

try:
    from ._bicomplex import (
        DoubleComplex,
        betti,
        build_preset,
        census_summary,
        degeneration_page,
        hodge,
        page_dims,
        preset_names,
        read_document,
        write_document,
    )
except ImportError:  # in-tree layout: extension module next to the package
    from _bicomplex import (
        DoubleComplex,
        betti,
        build_preset,
        census_summary,
        degeneration_page,
        hodge,
        page_dims,
        preset_names,
        read_document,
        write_document,
    )

__all__ = [
    "DoubleComplex",
    "betti",
    "build_preset",
    "census_summary",
    "degeneration_page",
    "hodge",
    "page_dims",
    "preset_names",
    "read_document",
    "write_document",
]
