import logging
import os

from django.core.management.base import BaseCommand, CommandError

from ..algebra import CliffordAlgebra
from ..exceptions import BianchiError
from ..forms import form_errors
from ..orders import clifford_order
from ..domain import facet_bubbles
from ..presets import load_order, preset_region
from ..reports import emit_frame
from ..serialization import canonical_dumps, write_json

logger = logging.getLogger(__name__)


class BianchiCommand(BaseCommand):
    """
    Validates options through ``form_class`` and runs ``compute``. Errors from the
    library are printed as {"status": "error", "message": ...} and exit nonzero.
    """
    form_class = None
    name = None
    order_source = True

    def add_arguments(self, parser):
        parser.add_argument('--json', action='store_true', help='Print canonical JSON instead of a table')
        parser.add_argument('--out', help='Directory for JSON, CSV and SVG artifacts')
        parser.add_argument('--threads', type=int, help='Worker threads')
        parser.add_argument('--save', action='store_true', help='Write artifacts to BIANCHI_OUTPUT_DIR')
        if self.order_source:
            parser.add_argument('--preset', help='Named order')
            parser.add_argument('--order', help='Order JSON file')
            parser.add_argument('--form', help='Form coefficients d_1,...,d_m; uses the Clifford order')

    def handle(self, *args, **options):
        data = {key: value for key, value in options.items() if value is not None and value is not False}
        form = self.form_class(data=data)
        if not form.is_valid():
            raise CommandError(self.error_json(form_errors(form)))
        config = form.cleaned_data
        try:
            payload = self.compute(config)
        except BianchiError as exc:
            logger.error(f"{self.name} failed: {exc}")
            raise CommandError(self.error_json(str(exc)))
        payload = {'status': 'ok', 'command': self.name, **payload}
        self.emit(payload, config)
        if payload.get('consistent') is False:
            raise CommandError(self.error_json(f"{self.name} found an internal inconsistency"))

    def error_json(self, message):
        return canonical_dumps({'status': 'error', 'command': self.name, 'message': message})

    def load(self, config):
        if config.get('form') is not None:
            return clifford_order(CliffordAlgebra(config['form']))
        return load_order(config.get('preset'), config.get('order'))

    def domain(self, config):
        """The fundamental domain of the configured order, over its preset region when it has one."""
        order = self.load(config)
        cell = region = None
        if config.get('preset'):
            cell, region = preset_region(config['preset'])
        return facet_bubbles(order, config['bound'], cell=cell, region=region)

    def table(self, payload, config):
        """The DataFrame printed when --json is not given; None prints JSON."""
        return None

    def emit(self, payload, config):
        out = config.get('out')
        frame = None if config.get('json') else self.table(payload, config)
        if frame is None:
            self.stdout.write(canonical_dumps(payload))
        else:
            emit_frame(frame, self.name, self.stdout, out)
        if out:
            write_json(os.path.join(out, f"{self.name}.json"), payload)

    def compute(self, config):
        raise NotImplementedError
