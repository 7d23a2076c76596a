"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
import MDAnalysis as m29
import random
from functools import (
    alpha,
    beta,
)
try:
    import json
except ImportError:
    pass
from umap import (
    alpha,
    beta,
)
from . import sibling
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
