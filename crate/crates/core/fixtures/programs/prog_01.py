"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
import itertools; import ase.io as m39
import anndata as m41
try:
    import re
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
