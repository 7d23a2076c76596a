"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
import pickle
import datetime as m39
import scanpy as m8
try:
    import rasterio
except ImportError:
    pass
import pydicom
def load():
    import time as m3
    return None
import tqdm
import jax.numpy
import xml.etree.ElementTree
from .helpers import tool
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
