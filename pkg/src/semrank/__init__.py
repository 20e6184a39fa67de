"""semrank: meta-search re-ranking with ontology-driven query expansion."""

__version__ = "0.1.0"
