import os
import tempfile
import yaml
from pathlib import Path

from src.core.logger import logger

def load_yaml_files(path: Path) -> dict:
    """
    Load every YAML file in the given path and return a dictionary with the content of each file.

    :param path: Path to the directory containing the YAML files.
    :return: Dictionary containing the content of each YAML file.
    """
    data = {}
    path = Path(path)

    if not path.exists():
        logger.error(f"Path {path} does not exist")
        raise FileNotFoundError(f"Path {path} does not exist")

    files = sorted(list(path.glob("*.yml")) + list(path.glob("*.yaml")))
    if not files:
        logger.warning(f"No YAML files found in {path}")
        raise FileNotFoundError(f"No YAML files found in {path}")

    for file in files:
        try:
            with file.open('r', encoding="utf-8") as f:
                data[file.stem] = yaml.safe_load(f)
        except yaml.YAMLError as e:
            logger.exception(f"Error parsing YAML file {file}: {e}")
            raise

    return data


def atomic_write(path, payload) -> Path:
    """
    Escribe un fichero de forma atómica (fichero temporal en el mismo directorio + rename).

    :param path: Ruta destino.
    :param payload: Contenido en str o bytes.
    :returns: Ruta final escrita.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    mode = "wb" if isinstance(payload, (bytes, bytearray)) else "w"
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, mode, **({} if mode == "wb" else {"encoding": "utf-8", "newline": ""})) as f:
            f.write(payload)
        os.replace(tmp_name, path)
    except Exception:
        logger.exception(f"Error escribiendo {path}")
        if os.path.exists(tmp_name):
            os.remove(tmp_name)
        raise
    return path
