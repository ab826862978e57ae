from decouple import config

# Logging
LOG_LEVEL = config('PGSNET_LOG_LEVEL', default='INFO')
# Optional file sink; log records are serialized as JSON lines when set.
LOG_FILE = config('PGSNET_LOG_FILE', default=None)

# Torch runtime
DEVICE = config('PGSNET_DEVICE', default='cpu')
# A single intra-op thread keeps CPU reductions in a fixed order between runs.
NUM_THREADS = config('PGSNET_NUM_THREADS', default=1, cast=int)
DETERMINISTIC = config('PGSNET_DETERMINISTIC', default=True, cast=bool)

# Checkpoint container version; bumped whenever the saved layout changes.
CHECKPOINT_SCHEMA_VERSION = 1

# Corpus layout
IMAGE_DIR_NAME = 'image'
MASK_DIR_NAME = 'mask'
IMAGE_EXTENSIONS = ('.png', '.jpg', '.jpeg')
MASK_EXTENSIONS = ('.png',)
