"""
``arcforge <subcommand> [flags]``: maps hyphenated subcommand names onto the
app's management commands and returns the process exit status.
"""

import os
import sys

from django.core.management import ManagementUtility

SUBCOMMANDS = {
    'field': 'field',
    'nrc': 'nrc',
    'check-arc': 'check_arc',
    'project': 'project',
    'conic': 'conic',
    'alpha': 'alpha',
    'verify': 'verify',
    'pmatrix': 'pmatrix',
    'mdmatrix': 'mdmatrix',
    'qmatrix': 'qmatrix',
    'pipeline': 'pipeline',
    'extend': 'extend',
    'theorem': 'theorem',
    'explore': 'explore',
}

# Django's own commands stay reachable, e.g. ``manage.py test arcs``
PASSTHROUGH = {'test', 'check', 'help', 'shell', 'diffsettings'}

USAGE = 'usage: arcforge {%s} [flags]\n' % ','.join(SUBCOMMANDS)


def _exit_status(code):
    if code is None:
        return 0
    if isinstance(code, int):
        return code
    return 1


def run(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'arcforge.settings')
    if not argv:
        sys.stderr.write(USAGE)
        return 2
    if argv[0] in ('-h', '--help'):
        sys.stdout.write(USAGE)
        return 0
    name = SUBCOMMANDS.get(argv[0]) or (argv[0] if argv[0] in PASSTHROUGH else None)
    if name is None:
        sys.stderr.write(f'unknown subcommand {argv[0]!r}\n{USAGE}')
        return 2
    try:
        ManagementUtility(['arcforge', name, *argv[1:]]).execute()
    except SystemExit as exc:
        return _exit_status(exc.code)
    return 0
