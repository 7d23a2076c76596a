"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
from xml.etree.ElementTree import (
    alpha,
    beta,
)
import numpy
def load():
    from concurrent import futures
    return None
try:
    import sklearn.linear_model
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
