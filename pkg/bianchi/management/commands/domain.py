import os

from ...domain import coverage
from ...figures import write_section
from ...forms import DomainForm
from ..base import BianchiCommand


class Command(BianchiCommand):
    help = 'Facet bubbles, singular cusps and cusp classes of the fundamental domain'
    form_class = DomainForm
    name = 'domain'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--bound', type=int, help='Denominator norm bound')
        parser.add_argument('--svg', help='Write a 2D section of the domain to this path')
        parser.add_argument('--plane', help='Two coordinate indices for the section, default 0,1')
        parser.add_argument('--slice', help='Values of the remaining coordinates, comma-separated rationals')

    def compute(self, config):
        domain = self.domain(config)
        sampled = coverage(domain)
        payload = {
            'domain': domain.to_json(),
            'coverage': {'samples': sampled.samples, 'uncovered': len(sampled.uncovered)},
        }
        if config['svg']:
            path = config['svg']
            if config['out'] and not os.path.isabs(path):
                os.makedirs(config['out'], exist_ok=True)
                path = os.path.join(config['out'], path)
            payload['svg'] = write_section(path, domain, config['plane'], config['slice'])
        return payload
