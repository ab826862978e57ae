from pathlib import Path

from decouple import Csv, RepositoryEnv, strtobool

from pipeline.models import CONFIG_KEYS, TrainConfig
from pipeline.repositories.interfaces.config_repository_interface import ConfigRepositoryInterface
from pgsnet_app.exceptions import DataError, ValidationError


class ConfigRepository(ConfigRepositoryInterface):
    """
    Reads and writes the flat KEY=value training configuration.

    The file is parsed with decouple's RepositoryEnv and values are cast with decouple casts. Only the file
    is read: environment variables never override a training configuration. Keys missing from the file keep
    their TrainConfig default; unknown keys are rejected.
    """

    def load_config(self, path):
        path = Path(path)
        if not path.is_file():
            raise DataError(f"Config file {path} does not exist.", paths=[path])
        try:
            repository = RepositoryEnv(str(path))
        except (OSError, UnicodeDecodeError) as e:
            raise DataError(f"Error reading config file {path}: {e}", paths=[path]) from e

        unknown = sorted(set(repository.data) - set(CONFIG_KEYS))
        if unknown:
            raise ValidationError(f"Unknown config key(s) in {path}: {', '.join(unknown)}")

        defaults = TrainConfig()
        values = {}
        for key, field_name in CONFIG_KEYS.items():
            if key not in repository.data:
                values[field_name] = getattr(defaults, field_name)
                continue
            try:
                values[field_name] = self._cast(field_name, getattr(defaults, field_name), repository.data[key])
            except ValueError as e:
                raise ValidationError(f"Invalid value for {key} in {path}: {e}") from e
        return TrainConfig(**values)

    @staticmethod
    def _cast(field_name, default, raw):
        if field_name == 'scales':
            return tuple(Csv(cast=float)(raw))
        if isinstance(default, bool):
            return bool(strtobool(raw))
        return type(default)(raw)

    def write_config(self, cfg, path):
        path = Path(path)
        lines = []
        for key, field_name in CONFIG_KEYS.items():
            value = getattr(cfg, field_name)
            if isinstance(value, tuple):
                value = ','.join(str(v) for v in value)
            elif isinstance(value, bool):
                value = str(value).lower()
            lines.append(f'{key}={value}')
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text('\n'.join(lines) + '\n')
        except OSError as e:
            raise DataError(f"Error writing config file {path}: {e}", paths=[path]) from e
        return path
