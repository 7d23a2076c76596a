"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
import lightgbm
try:
    import skimage.io
except ImportError:
    pass
from argparse import (
    alpha,
    beta,
)
import networkx; import gzip as m52
import subprocess, scanpy
try:
    import glob
except ImportError:
    pass
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
