"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
import transformers
import tqdm
import math, nibabel
import re
import seaborn
from torch import (
    alpha,
    beta,
)
import shutil; import functools as m97
from . import sibling
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
