"""Multilingual, script-standardized, entity-typed names from Wikidata dumps."""
__version__ = "0.1.0"
