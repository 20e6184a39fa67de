"""Page content handling: HTML purification, tokenization, stopwords."""

from .html import SelectorError, parse_html, select, select_one
from .purify import FetchStatus, PageContent, decode_html, purify_html
from .tokenize import MIN_TOKEN_LEN, Token, TokenizedDoc, load_stopwords, token_stream, tokenize

__all__ = [
    "FetchStatus",
    "MIN_TOKEN_LEN",
    "PageContent",
    "SelectorError",
    "Token",
    "TokenizedDoc",
    "decode_html",
    "load_stopwords",
    "parse_html",
    "purify_html",
    "select",
    "select_one",
    "token_stream",
    "tokenize",
]
