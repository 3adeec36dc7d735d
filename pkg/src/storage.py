"""
Çıktı Yazma Modülü

Simülasyon çıktılarını diske yazar:
- CSV: '#' ile başlayan provenance yorum bloğu, başlık satırı, 12 anlamlı basamak
- Metadata: senaryo ile aynı INI biçimi + [run] bölümü
Tüm yazımlar atomiktir (geçici dosya + os.replace).
"""

import logging
import os
from typing import Dict, Optional

import pandas as pd

from scenarios import Sections, sections_to_text

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.12g"


def _atomic_write(path: str, text: str) -> str:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    temporary = f"{path}.tmp"
    with open(temporary, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    os.replace(temporary, path)
    return path


def _comment_block(provenance: Optional[Dict[str, object]]) -> str:
    lines = []
    for key, value in (provenance or {}).items():
        text = str(value).replace("\n", " ")
        lines.append(f"# {key}: {text}\n")
    return "".join(lines)


def write_csv(frame: pd.DataFrame, path: str,
              provenance: Optional[Dict[str, object]] = None) -> str:
    """
    DataFrame'i yorum bloğuyla birlikte CSV olarak yazar

    Args:
        frame: Yazılacak tablo (ilk sütun zaman olmalı, trajectory için)
        path: Hedef dosya
        provenance: Yorum bloğuna yazılacak anahtar-değerler

    Returns:
        str: Yazılan dosya yolu
    """
    body = frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    _atomic_write(path, _comment_block(provenance) + body)
    logger.info(f"💾 CSV kaydedildi: {path} ({len(frame)} satır)")
    return path


def read_csv(path: str) -> pd.DataFrame:
    """Yorum bloğunu atlayarak CSV'yi okur"""
    return pd.read_csv(path, comment="#")


def write_metadata(sections: Sections, run_info: Dict[str, object], path: str) -> str:
    """Senaryo bölümleri + [run] bölümünü INI olarak yazar"""
    combined = {name: dict(values) for name, values in sections.items()}
    combined["run"] = {key: str(value) for key, value in run_info.items()}
    _atomic_write(path, sections_to_text(combined))
    logger.info(f"💾 Metadata kaydedildi: {path}")
    return path
