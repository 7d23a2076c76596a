"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
from urllib.request import (
    alpha,
    beta,
)
import jax.numpy; import dataclasses as m39
from netCDF4 import (
    alpha,
    beta,
)
try:
    import nibabel
except ImportError:
    pass
import umap; import xarray as m59
from .helpers import tool
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
