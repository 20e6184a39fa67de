"""Shared provider types: engines, result entries, fetch settings."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Protocol, runtime_checkable
from urllib.parse import urlsplit

from ..content.purify import PageContent


class Engine(Enum):
    GOOGLE = "google"
    YAHOO = "yahoo"
    BING = "bing"
    OFFLINE = "offline"

    @classmethod
    def from_name(cls, name: str) -> "Engine":
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise ValueError(f"unknown engine {name!r}") from None


@dataclass(frozen=True)
class ResultEntry:
    """One hit as an engine reported it: the (title, abstract, URL) triplet
    plus where the engine placed it."""

    engine: Engine
    classical_rank: int
    title: str
    abstract: str
    url: str

    def __post_init__(self):
        if self.classical_rank < 1:
            raise ValueError("classical_rank starts at 1")
        parts = urlsplit(self.url)
        if not parts.scheme or not parts.netloc:
            raise ValueError(f"url must be absolute, got {self.url!r}")

    def to_dict(self) -> dict:
        return {
            "engine": self.engine.value,
            "classical_rank": self.classical_rank,
            "title": self.title,
            "abstract": self.abstract,
            "url": self.url,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ResultEntry":
        return cls(
            engine=Engine(data["engine"]),
            classical_rank=data["classical_rank"],
            title=data["title"],
            abstract=data["abstract"],
            url=data["url"],
        )


@dataclass(frozen=True)
class ProviderConfig:
    top_n: int = 20
    timeout_ms: int = 5000
    user_agent: str = "semrank/0.1"
    max_parallel_fetches: int = 8

    def __post_init__(self):
        if self.top_n < 1:
            raise ValueError("top_n must be >= 1")
        if self.timeout_ms < 1:
            raise ValueError("timeout_ms must be >= 1")
        if self.max_parallel_fetches < 1:
            raise ValueError("max_parallel_fetches must be >= 1")

    @property
    def timeout_seconds(self) -> float:
        return self.timeout_ms / 1000.0


@runtime_checkable
class Provider(Protocol):
    """One result source: a SERP search plus a way to fetch its pages.

    ``search`` raises ProviderUnavailable or ParseFailure; ``fetch`` never
    raises — fetch failures are encoded in the returned fetch_status.
    """

    engine: Engine

    def search(self, query: str, config: ProviderConfig) -> list[ResultEntry]:
        ...

    def fetch(self, url: str, config: ProviderConfig) -> PageContent:
        ...
