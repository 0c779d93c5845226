"""
Configuration settings for the LTL policy synthesis toolkit
"""
from pydantic_settings import BaseSettings
from pydantic import ConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables"""

    model_config = ConfigDict(env_file=".env", case_sensitive=False, extra="ignore")

    # Logging
    log_level: str = "INFO"
    log_format: str = "text"  # text | json

    # Artifacts
    output_dir: str = "results"

    # Model validation
    probability_tolerance: float = 1e-12

    # Explicit product / oracle budgets
    enumeration_cap: int = 200_000
    brute_force_budget: int = 10_000
    vi_tolerance: float = 1e-10
    vi_max_sweeps: int = 1_000_000

    # Reward shaping defaults
    r_f: float = 0.99
    gamma_f: float = 0.9999

    # Q-learning defaults
    episodes: int = 1000
    tau: int = 100
    seed: int = 0
    convergence_window: int = 50
    convergence_threshold: float = 1e-4
    min_episodes: int = 200
    epsilon_floor: float = 0.01

    # Experiment harness
    repetitions: int = 1
    workers: int = 1


# Create global settings instance
settings = Settings()
