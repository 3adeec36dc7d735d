"""
Ayarlar Modülü

Süreç düzeyindeki ayarlar environment variable'lardan okunur.
.env dosyası varsa önce o yüklenir.
"""

import logging
import os
from dataclasses import dataclass, replace
from typing import Optional

from dotenv import load_dotenv

# .env dosyasını yükle
load_dotenv()

logger = logging.getLogger(__name__)

CODE_VERSION = "1.0.0"
DEFAULT_MAX_HILBERT_DIM = 200_000


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name, "")
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"⚠️ {name}={raw!r} tamsayı değil, varsayılan kullanılıyor: {default}")
        return default


def _resolve_database(output_dir: str, database_name: str) -> str:
    if os.path.isabs(database_name):
        return database_name
    return os.path.join(output_dir, database_name)


@dataclass(frozen=True)
class Settings:
    """Çalışma zamanı ayarları"""

    log_level: str
    log_file: Optional[str]
    max_hilbert_dim: int
    output_dir: str
    database_path: str
    worker_threads: int
    database_name: str = "runs.db"

    @classmethod
    def from_env(cls) -> "Settings":
        """
        Environment variable'lardan ayarları oluşturur

        Returns:
            Settings: Çözümlenmiş ayarlar
        """
        output_dir = os.getenv("OUTPUT_DIR", "results")
        database_name = os.getenv("DATABASE_PATH", "runs.db")

        return cls(
            log_level=os.getenv("LOG_LEVEL", "INFO").upper(),
            log_file=os.getenv("LOG_FILE") or None,
            max_hilbert_dim=_int_env("MAX_HILBERT_DIM", DEFAULT_MAX_HILBERT_DIM),
            output_dir=output_dir,
            database_path=_resolve_database(output_dir, database_name),
            worker_threads=max(1, _int_env("WORKER_THREADS", 1)),
            database_name=database_name,
        )

    def with_output_dir(self, output_dir: str) -> "Settings":
        """Çıktı dizini değişince göreli veri tabanı yolu da taşınır"""
        return replace(self, output_dir=output_dir,
                       database_path=_resolve_database(output_dir, self.database_name))


def get_settings() -> Settings:
    """Güncel environment'tan ayarları döndürür"""
    return Settings.from_env()
