"""Loads documents of the fixture corpus by name."""
import os

from GenFlag.config import FIXTURE_DIR, FLAG_FILE_EXTENSION
from GenFlag.dsl.parser import load_spec


def fixture_path(name):
    return os.path.join(FIXTURE_DIR, name + FLAG_FILE_EXTENSION)


def fixture_document(name):
    return load_spec(fixture_path(name))


def fixture_spec(name):
    return fixture_document(name).spec


FIXTURE_NAMES = sorted(os.path.splitext(f)[0] for f in os.listdir(FIXTURE_DIR) if f.endswith(FLAG_FILE_EXTENSION))
