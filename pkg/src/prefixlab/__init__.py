"""prefixlab: a workbench for prefix-free codes, self-delimiting machines,
and program-size complexity experiments."""

__version__ = "0.1.0"
