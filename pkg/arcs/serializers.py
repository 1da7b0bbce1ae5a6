from rest_framework import serializers

import arcforge

from .exceptions import ArcforgeError
from .gf import FieldSpec
from .projgeom import Arc, is_arc, subset_label


class FieldSpecSerializer(serializers.Serializer):
    p = serializers.IntegerField(min_value=2)
    e = serializers.IntegerField(min_value=1, default=1)
    modulus = serializers.ListField(
        child=serializers.IntegerField(min_value=0), default=list
    )
    q = serializers.IntegerField(read_only=True)

    def validate(self, attrs):
        try:
            attrs['spec'] = FieldSpec(attrs['p'], attrs['e'], tuple(attrs.get('modulus') or ()))
        except ArcforgeError as exc:
            raise serializers.ValidationError(str(exc))
        return attrs


class ArcFileSerializer(serializers.Serializer):
    """{field, k, vectors} with every vector a list of k element codes."""

    field = FieldSpecSerializer(source='spec')
    k = serializers.IntegerField(min_value=2)
    vectors = serializers.ListField(
        child=serializers.ListField(child=serializers.IntegerField(min_value=0)),
        source='codes',
    )

    def validate(self, attrs):
        spec = attrs['spec']['spec']
        k = attrs['k']
        rows = attrs['codes']
        for i, row in enumerate(rows):
            if len(row) != k:
                raise serializers.ValidationError({'vectors': f'vector {i} has {len(row)} coordinates, expected {k}'})
            if any(code >= spec.q for code in row):
                raise serializers.ValidationError({'vectors': f'vector {i} has a code outside {spec}'})
        arc = Arc.from_codes(spec, k, rows)
        if self.context.get('validate', True):
            check = is_arc(arc.vectors, spec, k)
            if not check.ok:
                raise serializers.ValidationError(
                    {'vectors': f'not an arc: {subset_label(check.witness, "S")} is linearly dependent'}
                )
        attrs['arc'] = arc
        return attrs


class GfMatrixSerializer(serializers.Serializer):
    rows = serializers.IntegerField()
    cols = serializers.IntegerField()
    row_labels = serializers.ListField(child=serializers.CharField())
    col_labels = serializers.ListField(child=serializers.CharField())
    entries = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField()))


class AlphaSystemSerializer(serializers.Serializer):
    scope = serializers.ListField(child=serializers.IntegerField())
    nullspace_dim = serializers.IntegerField()
    equations_used = serializers.IntegerField()
    equations_total = serializers.IntegerField()
    seed = serializers.IntegerField(allow_null=True)
    values = serializers.SerializerMethodField()

    def get_values(self, obj):
        return obj.as_rows()


class LemmaCheckSerializer(serializers.Serializer):
    lemma = serializers.CharField()
    status = serializers.CharField(source='status.value')
    parameters = serializers.JSONField()
    witness = serializers.JSONField()


class PipelineReportSerializer(serializers.Serializer):
    parameters = serializers.JSONField()
    failed = serializers.ListField(child=serializers.CharField())
    checks = LemmaCheckSerializer(many=True)


class SearchCertSerializer(serializers.Serializer):
    field = FieldSpecSerializer(source='base.spec')
    k = serializers.IntegerField(source='base.k')
    base = serializers.SerializerMethodField()
    target = serializers.IntegerField(source='target_size')
    outcome = serializers.CharField(source='outcome.value')
    witness = serializers.SerializerMethodField()
    completions = serializers.IntegerField(allow_null=True)
    nodes = serializers.IntegerField(source='nodes_expanded')
    max_size = serializers.IntegerField(source='max_size_reached')
    seed = serializers.IntegerField(allow_null=True)
    ordering = serializers.CharField(source='candidate_order')

    def get_base(self, obj):
        return obj.base.codes()

    def get_witness(self, obj):
        return obj.witness.codes() if obj.witness is not None else None


class CertificateFileSerializer(serializers.Serializer):
    """A stored certificate as read back for ``extend --resume``."""

    field = FieldSpecSerializer()
    k = serializers.IntegerField(min_value=2)
    base = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField(min_value=0)))
    target = serializers.IntegerField(min_value=1)
    outcome = serializers.ChoiceField(choices=['reached', 'unreachable'])
    witness = serializers.ListField(
        child=serializers.ListField(child=serializers.IntegerField(min_value=0)),
        allow_null=True, required=False,
    )
    completions = serializers.IntegerField(allow_null=True, required=False)
    nodes = serializers.IntegerField(min_value=1)
    max_size = serializers.IntegerField(min_value=0)
    seed = serializers.IntegerField(allow_null=True, required=False)
    ordering = serializers.CharField()


class TheoremReportSerializer(serializers.Serializer):
    field = FieldSpecSerializer(source='spec')
    k = serializers.IntegerField()
    strategy = serializers.CharField()
    seed = serializers.IntegerField(allow_null=True)
    holds = serializers.BooleanField()
    subsets = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField()))
    certificates = SearchCertSerializer(many=True)


class ReportHeaderSerializer(serializers.Serializer):
    tool = serializers.CharField(default='arcforge')
    version = serializers.CharField(default=arcforge.__version__)
    command = serializers.CharField()
    field = FieldSpecSerializer(allow_null=True)
    parameters = serializers.JSONField()
    seed = serializers.IntegerField(allow_null=True)
    threads = serializers.IntegerField()
    elapsed = serializers.FloatField()


def header(command, spec, parameters, seed, threads, elapsed):
    return ReportHeaderSerializer({
        'tool': 'arcforge',
        'version': arcforge.__version__,
        'command': command,
        'field': spec,
        'parameters': parameters,
        'seed': seed,
        'threads': threads,
        'elapsed': round(elapsed, 6),
    }).data
