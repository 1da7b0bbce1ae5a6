"""
Reading and writing arc files, reports and search certificates.
"""

import csv
import hashlib
import io
import json
import logging
from pathlib import Path

from rest_framework.parsers import JSONParser
from rest_framework.renderers import JSONRenderer

from .serializers import ArcFileSerializer, CertificateFileSerializer, SearchCertSerializer

logger = logging.getLogger(__name__)


def render_json(data):
    return JSONRenderer().render(data, renderer_context={'indent': 2}) + b'\n'


def parse_json(stream):
    return JSONParser().parse(stream)


def render_csv(rows, columns):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_cell(row.get(column)) for column in columns])
    return buffer.getvalue()


def _csv_cell(value):
    if isinstance(value, (list, tuple)):
        return ' '.join(str(v) for v in value)
    if value is None:
        return ''
    return value


def load_arc(path, validate=True):
    """Arc stored at ``path``; raises ValidationError or ParseError for bad input."""
    with open(path, 'rb') as stream:
        data = parse_json(stream)
    serializer = ArcFileSerializer(data=data, context={'validate': validate})
    serializer.is_valid(raise_exception=True)
    arc = serializer.validated_data['arc']
    logger.info('arc loaded path=%s field=%s k=%d size=%d', path, arc.spec, arc.k, len(arc))
    return arc


def arc_document(arc):
    return ArcFileSerializer(arc).data


def save_arc(arc, path):
    Path(path).write_bytes(render_json(arc_document(arc)))


def base_digest(arc):
    """Short content digest of an arc, stable across runs."""
    payload = json.dumps({'field': arc.spec.to_dict(), 'k': arc.k, 'vectors': arc.codes()}, sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def certificate_path(directory, arc, target):
    return Path(directory) / f'cert-q{arc.q}-k{arc.k}-{base_digest(arc)}-t{target}.json'


def save_certificate(cert, directory):
    path = certificate_path(directory, cert.base, cert.target_size)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(render_json(SearchCertSerializer(cert).data))
    logger.info('certificate written path=%s outcome=%s', path, cert.outcome.value)
    return path


def load_certificate(path):
    with open(path, 'rb') as stream:
        data = parse_json(stream)
    serializer = CertificateFileSerializer(data=data)
    serializer.is_valid(raise_exception=True)
    return serializer.validated_data
