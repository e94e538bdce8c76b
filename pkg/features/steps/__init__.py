# features/steps/__init__.py
