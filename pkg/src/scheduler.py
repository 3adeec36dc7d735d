"""
Senaryo Zamanlayıcı Modülü

Birden fazla senaryoyu iş parçacığı havuzunda çalıştırır.
Her senaryo bağımsızdır; sonuçlar giriş sırasıyla döndürülür.
"""

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Sequence

logger = logging.getLogger(__name__)


@dataclass
class RunResult:
    """Tek senaryo çalıştırmasının özeti"""

    scenario: str
    exit_code: int = 0
    output_dir: str = ""
    files: List[str] = field(default_factory=list)
    message: str = ""
    wall_time_s: float = 0.0
    summary: Dict[str, object] = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "success" if self.exit_code == 0 else "failed"


class ScenarioScheduler:
    """İş parçacığı havuzlu senaryo çalıştırıcı"""

    def __init__(self, run_one: Callable[[object], RunResult], threads: int = 1):
        """
        Args:
            run_one: Tek senaryoyu çalıştırıp RunResult döndüren fonksiyon (hata fırlatmaz)
            threads: Havuz boyutu
        """
        self.run_one = run_one
        self.threads = max(1, int(threads))

    def run_batch(self, jobs: Sequence[object]) -> List[RunResult]:
        """
        Senaryoları çalıştırır

        Args:
            jobs: run_one'a verilecek senaryo listesi

        Returns:
            List[RunResult]: Giriş sırasıyla sonuçlar
        """
        if not jobs:
            return []
        logger.info(f"🚀 {len(jobs)} senaryo {self.threads} iş parçacığıyla başlatılıyor")

        if self.threads == 1 or len(jobs) == 1:
            return [self.run_one(job) for job in jobs]

        results: List[RunResult] = [None] * len(jobs)
        with ThreadPoolExecutor(max_workers=self.threads) as executor:
            futures = {executor.submit(self.run_one, job): index for index, job in enumerate(jobs)}
            for future in as_completed(futures):
                index = futures[future]
                results[index] = future.result()
                status = "✅" if results[index].exit_code == 0 else "❌"
                logger.info(f"{status} {results[index].scenario} tamamlandı "
                            f"({results[index].wall_time_s:.1f} s)")
        return results

    @staticmethod
    def batch_exit_code(results: Sequence[RunResult]) -> int:
        """Giriş sırasındaki ilk başarısız senaryonun çıkış kodu, yoksa 0"""
        for result in results:
            if result.exit_code != 0:
                return result.exit_code
        return 0
