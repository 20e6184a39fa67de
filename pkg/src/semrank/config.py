"""Configuration file and environment handling."""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass

from .errors import ConfigError
from .ranking import CriteriaConfig
from .vsm import QUERY_WEIGHTINGS, WeightingConfig

USER_AGENT_ENV_VAR = "SEMRANK_USER_AGENT"
DEFAULT_USER_AGENT = "semrank/0.1"

_WEIGHTING_KEYS = {"alpha", "beta", "query_weighting"}
_CRITERIA_KEYS = {"parasite_threshold", "parasite_min_text"}


@dataclass(frozen=True)
class AppConfig:
    weighting: WeightingConfig = WeightingConfig()
    criteria: CriteriaConfig = CriteriaConfig()


def default_user_agent() -> str:
    return os.environ.get(USER_AGENT_ENV_VAR, DEFAULT_USER_AGENT)


def load_config(path: str | None = None) -> AppConfig:
    """Read the INI config; absent path or file means library defaults.

    Recognized sections: ``[weighting]`` with alpha, beta, query_weighting;
    ``[criteria]`` with parasite_threshold, parasite_min_text.  Unknown keys
    in these sections are an error — a typo should not silently fall back.
    """
    if path is None:
        return AppConfig()
    parser = configparser.ConfigParser()
    read = parser.read(path, encoding="utf-8")
    if not read:
        raise ConfigError(f"config file {path!r} not found")

    weighting_kwargs: dict = {}
    if parser.has_section("weighting"):
        section = parser["weighting"]
        unknown = set(section) - _WEIGHTING_KEYS
        if unknown:
            raise ConfigError(f"unknown [weighting] keys: {sorted(unknown)}")
        try:
            if "alpha" in section:
                weighting_kwargs["alpha"] = section.getfloat("alpha")
            if "beta" in section:
                weighting_kwargs["beta"] = section.getfloat("beta")
        except ValueError as exc:
            raise ConfigError(f"bad [weighting] number: {exc}") from exc
        if "query_weighting" in section:
            value = section["query_weighting"].strip().lower()
            if value not in QUERY_WEIGHTINGS:
                raise ConfigError(
                    f"query_weighting must be one of {QUERY_WEIGHTINGS}, got {value!r}"
                )
            weighting_kwargs["query_weighting"] = value

    criteria_kwargs: dict = {}
    if parser.has_section("criteria"):
        section = parser["criteria"]
        unknown = set(section) - _CRITERIA_KEYS
        if unknown:
            raise ConfigError(f"unknown [criteria] keys: {sorted(unknown)}")
        try:
            if "parasite_threshold" in section:
                criteria_kwargs["parasite_threshold"] = section.getfloat("parasite_threshold")
            if "parasite_min_text" in section:
                criteria_kwargs["parasite_min_text"] = section.getint("parasite_min_text")
        except ValueError as exc:
            raise ConfigError(f"bad [criteria] number: {exc}") from exc

    try:
        return AppConfig(
            weighting=WeightingConfig(**weighting_kwargs),
            criteria=CriteriaConfig(**criteria_kwargs),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
