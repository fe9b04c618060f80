from ...forms import PresentationForm
from ...presentation import check_generators, facet_pairing, generators, is_involution, relation_holds, relations, word_text
from ..base import BianchiCommand


class Command(BianchiCommand):
    help = 'Generators and relations of PSL2(O) read off the fundamental domain'
    form_class = PresentationForm
    name = 'presentation'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--bound', type=int, help='Denominator norm bound for the domain')
        parser.add_argument('--length', type=int, help='Longest word searched for finite-order relations')
        parser.add_argument('--order-bound', type=int, dest='order_bound', help='Largest element order searched')
        parser.add_argument('--check', action='store_true', help='Check each crossing generator on its facet')

    def compute(self, config):
        domain = self.domain(config)
        gens = generators(domain)
        found = relations(gens, config['order_bound'], config['length'])
        pairing = facet_pairing(gens)
        payload = {
            'order': domain.order.label,
            'generators': gens.to_json(),
            'relations': [
                {'word': word_text(r.word), 'power': r.power, 'sign': r.sign, 'kind': r.kind}
                for r in found
            ],
            'pairing': pairing,
            'pairing_is_involution': is_involution(pairing),
        }
        holds = all(relation_holds(gens, r) for r in found)
        payload['consistent'] = holds
        if config['check']:
            checks = check_generators(domain)
            payload['generator_checks'] = [
                {'center': [str(x) for x in center], 'passed': passed} for center, passed in checks.items()
            ]
        return payload
