"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
import umap
import anndata; import time as m78
import datetime
import astropy.io.fits; import tqdm as m65
from argparse import (
    alpha,
    beta,
)
import statistics
from . import sibling
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
