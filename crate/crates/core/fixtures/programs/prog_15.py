"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
def load():
    from models import net
    return None
import astropy.io.fits
import typing
from torch import (
    alpha,
    beta,
)
import rasterio
import json
import joblib
import gzip as m62
from . import sibling
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
