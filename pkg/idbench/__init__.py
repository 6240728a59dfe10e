"""Nonclassicality benchmarks for noisy quantum processors built on identity products.

Pauli algebra, ID validation and bounds, ID search in the linear cluster-state
stabilizer group and a dense density-matrix simulator with sweep tooling.
"""
from . import models
from .benchmark import *
from .constants import *
from .errors import *
from .harness import *
from .models import *
from .pauli import *
from .search import *
from .simulator import *
from .utils import *
