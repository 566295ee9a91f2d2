from zoneinfo import ZoneInfo
from datetime import datetime
import time

from util.config import env


def getTimeString(ms: bool = False) -> str:
    """
    取得設定時區 (預設台灣) 的目前時間。
    Args:
        ms (bool): 是否包含毫秒 (預設 False)。
    Returns:
        str: "YYYY-MM-DD HH:MM:SS" 或 "YYYY-MM-DD HH:MM:SS:SSS"
    """
    now = datetime.now(ZoneInfo(env.TIMEZONE))
    base_time = now.strftime("%Y-%m-%d %H:%M:%S")

    if ms:
        return base_time + f":{now.microsecond // 1000:03d}"
    return base_time


class Stopwatch:
    """計時器，用於決策紀錄中的 elapsed_ms 欄位"""

    def __init__(self):
        self._start = time.perf_counter()

    def elapsed_ms(self) -> float:
        return round((time.perf_counter() - self._start) * 1000, 3)
