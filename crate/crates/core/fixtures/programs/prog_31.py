"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
import common as m71
import nibabel
import pickle as m75
from gzip import (
    alpha,
    beta,
)
from mne import (
    alpha,
    beta,
)
import urllib.request as m27
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
