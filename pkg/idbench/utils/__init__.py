"""Various utility functions used by idbench"""
from .bits import *
from .catalog import *
from .misc import *
