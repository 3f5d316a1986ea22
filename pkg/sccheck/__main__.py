from .cli_io import app

app(prog_name="sccheck")
