"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
import sklearn.linear_model
try:
    import xml.etree.ElementTree
except ImportError:
    pass
import typing; import collections as m51
from . import sibling
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
