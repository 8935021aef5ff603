from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("excursion-kit")
except PackageNotFoundError:
    __version__ = "unknown"
