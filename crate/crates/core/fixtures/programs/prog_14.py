"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
import anndata; import typing as m12
from geopandas import (
    alpha,
    beta,
)
import numba
def load():
    import umap as m42
    return None
def load():
    import rasterio as m96
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
