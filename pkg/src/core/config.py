from functools import lru_cache
from pathlib import Path

from src.core.constants import CONFIG_DIR
from src.core.logger import logger
from src.core.utils import load_yaml_files

_MISSING = object()

# Ficheros que el toolkit necesita: numerics.yaml y cases.yaml.
REQUIRED_SECTIONS = ("numerics", "cases")


class ConfigLoader:
    _instance = None

    def __new__(cls, *args, **kwargs):
        if not cls._instance:
            cls._instance = super(ConfigLoader, cls).__new__(cls)
            cls._instance._initialized = False
        return cls._instance

    def __init__(self):
        if not self._initialized:
            self._initialized = True
            self.load_config()

    def load_config(self):
        """Carga los YAML de `FBRK_CONFIG_DIR` o, en su defecto, del directorio config del repo."""
        possible_paths = [Path(CONFIG_DIR)] if CONFIG_DIR else []
        possible_paths += [
            Path(__file__).parent.parent.parent / "config",  # raíz del repo
            Path.cwd() / "config",
        ]

        config_path = next((path for path in possible_paths if path.exists()), None)
        if not config_path:
            logger.error(f"Configuration path not found. Tried: {[str(p) for p in possible_paths]}")
            raise FileNotFoundError("Config path does not exist")

        logger.debug(f"Using config path: {config_path}")
        self.config = load_yaml_files(path=config_path)
        missing = [name for name in REQUIRED_SECTIONS if name not in self.config]
        if missing:
            logger.error(f"Missing configuration files in {config_path}: {missing}")
            raise FileNotFoundError(f"Missing configuration files: {missing}")

    def get(self, key: str, default=_MISSING):
        """
        Valor de una clave en notación de puntos, p. ej. `numerics.nu_max.scan_step`.

        :raises KeyError: Si la clave no existe y no se da `default`.
        """
        value = self.config
        for part in key.split("."):
            if isinstance(value, dict) and part in value:
                value = value[part]
            elif default is not _MISSING:
                return default
            else:
                logger.error(f"Key {key} not found in configuration")
                raise KeyError(f"Key {key} not found in configuration")
        return value


@lru_cache()
def get_config() -> ConfigLoader:
    """Instancia única del cargador (cacheada)."""
    return ConfigLoader()
