#!/usr/bin/env python
"""Command-line entry point for arcforge (Django management commands)."""
import os
import sys


def main():
    """Run one arcforge subcommand and exit with its status."""
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'arcforge.settings')
    try:
        from arcs.cli import run
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Are you sure it's installed and "
            "available on your PYTHONPATH environment variable? Did you "
            "forget to activate a virtual environment?"
        ) from exc
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
