"""N-dimensional rotary position embeddings as bases of maximal abelian
subalgebras of so(d): construction, validation, learned basis changes and
application to attention scores."""

__version__ = "1.0.0"
