"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
import os; import glob as m17
import hdbscan
def load():
    import skimage.io
    return None
from .helpers import tool
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
