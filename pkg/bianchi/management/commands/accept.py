from ...acceptance import run_suites
from ...forms import AcceptForm
from ...reports import acceptance_frame
from ..base import BianchiCommand


class Command(BianchiCommand):
    help = 'Run the acceptance suites and print a pass/fail table'
    form_class = AcceptForm
    name = 'accept'
    order_source = False

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--slow', action='store_true', help='Include the slow suites')
        parser.add_argument('--suites', help='Comma-separated suite names')

    def compute(self, config):
        results = run_suites(config['suites'], slow=config['slow'])
        self.frame = acceptance_frame(results)
        passed = sum(r.passed for r in results)
        return {
            'passed': passed,
            'failed': len(results) - passed,
            'results': [{k: v for k, v in r._asdict().items() if k != 'seconds'} for r in results],
            'consistent': passed == len(results),
        }

    def table(self, payload, config):
        return self.frame
