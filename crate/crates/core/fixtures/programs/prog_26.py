"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
def load():
    import matplotlib.pyplot
    return None
import argparse, models
import MDAnalysis; import xml.etree.ElementTree as m80
try:
    import bs4
except ImportError:
    pass
import tensorflow as m43
def load():
    import torch.nn
    return None
from . import sibling
from .helpers import tool
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
