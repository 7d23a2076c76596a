"""Analysis script.

import fake_docstring_module
"""
from __future__ import annotations
from nibabel import (
    alpha,
    beta,
)
from MDAnalysis import (
    alpha,
    beta,
)
import mne as m50
from math import (
    alpha,
    beta,
)
from shutil import (
    alpha,
    beta,
)
import json; import tensorflow as m46
def load():
    from xml.etree import ElementTree
    return None
from .helpers import tool
# import commented_out_module
TEMPLATE = 'import quoted_module'
NOTE = """
from multiline_string import thing
"""
x = 1  # from inline_comment import y
print('done')
