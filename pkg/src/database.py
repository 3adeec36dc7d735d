"""
Çalıştırma Kaydı Modülü - SQLite Tabanlı Run Registry

Bu modül, CLI üzerinden yapılan her senaryo çalıştırmasını kaydeder:
- Senaryo adı, rejim, konfigürasyon özeti (hash)
- Çıktı dizini, durum, çıkış kodu, süre
- Çalıştırma metadata'sı (JSON)
"""

import json
import logging
import sqlite3
from typing import Dict, List, Optional

import pandas as pd

logger = logging.getLogger(__name__)


class RunDatabase:
    """Simülasyon çalıştırma kayıt veri tabanı"""

    def __init__(self, db_path: str = "runs.db"):
        """
        Veri tabanını başlat

        Args:
            db_path (str): Veri tabanı dosya yolu
        """
        self.db_path = db_path
        self.init_database()

    def init_database(self):
        """Tablo ve indeksleri oluştur"""
        try:
            with sqlite3.connect(self.db_path) as conn:
                cursor = conn.cursor()

                cursor.execute('''
                    CREATE TABLE IF NOT EXISTS runs (
                        id INTEGER PRIMARY KEY AUTOINCREMENT,
                        scenario TEXT NOT NULL,
                        regime TEXT,
                        config_hash TEXT,
                        output_dir TEXT,
                        status TEXT NOT NULL,
                        exit_code INTEGER NOT NULL,
                        wall_time_s REAL,
                        message TEXT,
                        metadata TEXT,
                        created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
                    )
                ''')

                cursor.execute('CREATE INDEX IF NOT EXISTS idx_runs_scenario ON runs(scenario)')
                cursor.execute('CREATE INDEX IF NOT EXISTS idx_runs_created ON runs(created_at)')
                conn.commit()
                logger.debug(f"Run registry hazır: {self.db_path}")

        except Exception as e:
            logger.error(f"❌ Veri tabanı başlatma hatası: {e}")
            raise

    def record_run(self, scenario: str, status: str, exit_code: int,
                   regime: Optional[str] = None, config_hash: Optional[str] = None,
                   output_dir: Optional[str] = None, wall_time_s: Optional[float] = None,
                   message: str = "", metadata: Optional[Dict] = None) -> Optional[int]:
        """
        Bir çalıştırmayı kaydet

        Returns:
            Optional[int]: Kayıt id'si, hata durumunda None
        """
        try:
            with sqlite3.connect(self.db_path) as conn:
                cursor = conn.cursor()
                cursor.execute(
                    '''INSERT INTO runs (scenario, regime, config_hash, output_dir, status,
                                         exit_code, wall_time_s, message, metadata)
                       VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?)''',
                    (scenario, regime, config_hash, output_dir, status, int(exit_code),
                     wall_time_s, message, json.dumps(metadata or {}, ensure_ascii=False, default=str))
                )
                conn.commit()
                return cursor.lastrowid

        except Exception as e:
            # kayıt hatası simülasyon sonucunu geçersiz kılmaz
            logger.error(f"❌ Çalıştırma kaydedilemedi: {e}")
            return None

    def get_runs(self, limit: int = 20, scenario: Optional[str] = None) -> pd.DataFrame:
        """
        Son çalıştırmaları getir (en yeni önce)

        Args:
            limit (int): Maksimum kayıt sayısı
            scenario (str): Verilirse yalnız bu senaryo

        Returns:
            pd.DataFrame: Kayıt tablosu (metadata sütunu hariç)
        """
        query = '''
            SELECT id, scenario, regime, status, exit_code, wall_time_s, config_hash,
                   output_dir, created_at
            FROM runs
        '''
        params: List = []
        if scenario:
            query += ' WHERE scenario = ?'
            params.append(scenario)
        query += ' ORDER BY id DESC LIMIT ?'
        params.append(int(limit))

        with sqlite3.connect(self.db_path) as conn:
            return pd.read_sql_query(query, conn, params=params)

    def get_run(self, run_id: int) -> Optional[Dict]:
        """Tek kaydı metadata'sıyla birlikte getir"""
        with sqlite3.connect(self.db_path) as conn:
            conn.row_factory = sqlite3.Row
            row = conn.execute('SELECT * FROM runs WHERE id = ?', (run_id,)).fetchone()
        if row is None:
            return None
        record = dict(row)
        record["metadata"] = json.loads(record["metadata"] or "{}")
        return record
