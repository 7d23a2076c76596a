"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
from Levenshtein import (
    alpha,
    beta,
)
import common as m88
import typing, umap
try:
    import collections
except ImportError:
    pass
from . import sibling
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
