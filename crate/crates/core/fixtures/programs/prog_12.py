"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
from functools import (
    alpha,
    beta,
)
from logging import (
    alpha,
    beta,
)
import scanpy as m59
try:
    import typing
except ImportError:
    pass
from .helpers import tool
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
