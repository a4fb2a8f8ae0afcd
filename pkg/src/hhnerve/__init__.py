"""Exact Hochschild (co)homology of finite group algebras and nerves of groupoids."""

from __future__ import annotations

__version__ = "0.1.0"

from .exactla import FieldSpec, SparseMatrix, rank, smith_normal_form
from .fingroup import FiniteGroup, builtin_group, conjugacy_classes, from_cayley_table, group_by_name

__all__ = ["FieldSpec", "FiniteGroup", "SparseMatrix", "builtin_group", "conjugacy_classes",
           "from_cayley_table", "group_by_name", "rank", "smith_normal_form", "__version__"]
