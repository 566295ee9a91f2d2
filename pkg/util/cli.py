import functools

import click

from util.log import error


class CommandError(click.ClickException):
    """領域錯誤轉成 ❌ 訊息並以狀態碼 1 結束"""

    def show(self, file=None):
        error(self.format_message())


# 領域錯誤都是 ValueError 的子類別；檔案問題是 OSError
HANDLED_ERRORS = (ValueError, OSError)


def handle_errors(func):
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except HANDLED_ERRORS as e:
            raise CommandError(str(e)) from e
    return wrapper


def graph_source(func):
    """--catalog / --param / --file 三個共用選項"""
    func = click.option("--file", "file_path", type=click.Path(dir_okay=False),
                        help="邊列表檔案 (首行 'n m'，之後每行 'u v')")(func)
    func = click.option("--param", "params", type=int, multiple=True,
                        help="目錄家族參數，可重複，例如 --param 2 --param 3")(func)
    func = click.option("--catalog", "catalog_name", help="目錄或資料圖名稱")(func)
    return func


def load_source(catalog_name: str | None, params, file_path: str | None):
    from functions.catalog import resolve_graph
    from functions.graph_core import load_graph

    if bool(catalog_name) == bool(file_path):
        raise click.UsageError("--catalog 與 --file 必須恰好指定一個")
    if file_path:
        return load_graph(file_path)
    return resolve_graph(catalog_name, list(params))
