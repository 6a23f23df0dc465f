"""explograph: exact tropical/polyhedral geometry with a cut-and-glue verified curve counter."""

__version__ = "0.1.0"
