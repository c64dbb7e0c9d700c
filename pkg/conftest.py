# Keeps the repository root (and so `lib`) importable from tests/.
