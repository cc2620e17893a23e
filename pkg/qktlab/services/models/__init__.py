"""Built-in example models, model files and their classification."""

from .catalog import Model, brackets_from_entries, builtin, builtin_names, register
from .io import file_from_model, load, model_from_file, orthonormalize, save
from .schema import EXPECTATIONS, ModelFile
from .validate import Validation, check_expectation, model_bundle, validate

__all__ = [
    "Model",
    "brackets_from_entries",
    "builtin",
    "builtin_names",
    "register",
    "file_from_model",
    "load",
    "model_from_file",
    "orthonormalize",
    "save",
    "EXPECTATIONS",
    "ModelFile",
    "Validation",
    "check_expectation",
    "model_bundle",
    "validate",
]
