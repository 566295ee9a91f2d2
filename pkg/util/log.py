import click

from util.config import env

# 狀態訊息一律寫到 stderr，stdout 只留給結果 (表格、JSON)


def start(message: str):
    click.echo(f"📡 {message}", err=True)


def ok(message: str):
    click.echo(f"✅ {message}", err=True)


def warn(message: str):
    click.echo(f"⚠️ {message}", err=True)


def error(message: str):
    click.echo(f"❌ {message}", err=True)


def saved(path) -> None:
    click.echo(f"💾 已儲存至 {path}", err=True)


def debug(message: str):
    if env.VERBOSE:
        click.echo(f"   {message}", err=True)
