import os
from functools import lru_cache
from typing import Any, Optional

from pydantic import Field
from pydantic_settings import (
    BaseSettings,
    JsonConfigSettingsSource,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
)

CONFIG_ENV_VAR = "PRCLAB_CONFIG"


class Settings(BaseSettings):
    """Laboratory settings.

    Precedence: explicit keyword arguments (CLI flags) > environment
    (``PRCLAB_*`` and ``.env``) > JSON file named by ``PRCLAB_CONFIG``.
    """

    # Solver budgets
    budget_nodes: int = Field(default=100_000_000, gt=0, description="Search nodes per solve")
    budget_secs: float = Field(default=60.0, gt=0, description="Wall-clock seconds per solve")
    colour_cap: int = Field(default=24, gt=0, description="Largest palette the rainbow checker accepts")
    oracle_cap: int = Field(default=10_000_000, gt=0, description="Largest k^m the brute-force oracle enumerates")
    clique_exact_limit: int = Field(default=40, gt=0, description="Largest order for exact clique search")

    # Search behaviour
    determinism: str = Field(default="sequential-canonical")
    edge_order: str = Field(default="degree-sum")
    symmetry_breaking: bool = Field(default=True)
    rainbow_pruning: bool = Field(default=False)

    # Sweep
    jobs: int = Field(default=1, gt=0)
    seed: int = Field(default=20240607)
    output_dir: str = Field(default="outputs")

    # Caches
    metrics_cache_size: int = Field(default=4096, gt=0)
    solve_cache_size: int = Field(default=1024, gt=0)

    log_level: str = Field(default="INFO")

    model_config = SettingsConfigDict(
        env_prefix="PRCLAB_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        sources: list[PydanticBaseSettingsSource] = [init_settings, env_settings, dotenv_settings]
        config_path = os.environ.get(CONFIG_ENV_VAR)
        if config_path:
            sources.append(JsonConfigSettingsSource(settings_cls, json_file=config_path))
        return tuple(sources)

    def search_overrides(self) -> dict[str, Any]:
        """Fields shared with SearchConfig."""
        return {
            "node_budget": self.budget_nodes,
            "time_budget": self.budget_secs,
            "colour_cap": self.colour_cap,
            "symmetry_breaking": self.symmetry_breaking,
            "edge_order": self.edge_order,
            "determinism": self.determinism,
            "rainbow_pruning": self.rainbow_pruning,
        }


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


def build_settings(**overrides: Optional[Any]) -> Settings:
    """Settings with CLI overrides applied; ``None`` values are ignored."""
    return Settings(**{key: value for key, value in overrides.items() if value is not None})
