from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    app_name: str = "magcodec"
    size_cap_bits: int = 2**33
    default_compressor: str = "lz"
    default_seed: int = 20210101
    max_ones: int = 13
    seed_attempts: int = 4096
    chunk_bits: int = 1 << 23
    workers: int = 1
    output_dir: str = "results"
    log_level: str = "INFO"

    model_config = SettingsConfigDict(env_prefix="MAGCODEC_", case_sensitive=False)


@lru_cache
def get_settings() -> Settings:
    return Settings()
