"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
import pickle as m6
try:
    import models.net
except ImportError:
    pass
import shapely.geometry; import networkx as m56
import pandas, itertools
import rasterio as m60
import tensorflow as m33
import typing, logging
from .helpers import tool
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
