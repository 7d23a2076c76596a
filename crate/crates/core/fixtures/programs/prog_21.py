"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
import networkx
import xml.etree.ElementTree
import subprocess
import sklearn.linear_model as m99
try:
    import time
except ImportError:
    pass
from models.net import (
    alpha,
    beta,
)
from .helpers import tool
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
