"""Pydantic models used by idbench"""
from .base import *
from .ids import *
from .noise import *
from .results import *
from .sweep import *
