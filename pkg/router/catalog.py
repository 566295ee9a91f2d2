import click


@click.command("catalog", help="列出目錄圖與設定檔中的資料圖")
def list_catalog():
    from functions.catalog import catalog_names, data_graph_path
    from util.config import DATA_FILE_NAMES

    for name, signature in catalog_names().items():
        click.echo(f"{name} {signature}".rstrip())
    for name in DATA_FILE_NAMES:
        path = data_graph_path(name)
        status = str(path) if path is not None and path.exists() else "(未設定)"
        click.echo(f"{name} [data] {status}")
