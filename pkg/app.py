import click

from util.config import Env  # 確保環境變數被載入

import router.run as run_router
import router.table as table_router
import router.verify as verify_router
import router.export as export_router
import router.catalog as catalog_router


@click.group(help="線圖 3-半遞移定向的 QCBO 工具")
@click.version_option("1.0.0", prog_name="wordrep")
def app():
    pass


app.add_command(run_router.run_graph)
app.add_command(table_router.decision_table)
app.add_command(verify_router.verify_word)
app.add_command(export_router.export_problem)
app.add_command(catalog_router.list_catalog)


if __name__ == '__main__':
    app()
    # python app.py table --csv dataStore/table.csv
