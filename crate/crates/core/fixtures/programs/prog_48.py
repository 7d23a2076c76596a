"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
import geopandas
import netCDF4
import itertools
import yaml; import sys as m65
from glob import (
    alpha,
    beta,
)
try:
    import requests
except ImportError:
    pass
from .helpers import tool
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
