import time

from ...exceptions import BianchiError
from ...forms import IndexForm
from ...presentation import (
    coset_reps_from_orbits, gamma0_key, gamma0_member, gamma0_orbit_data, generators, relations, subgroup_index,
    suborder_key, suborder_member, suborder_orbit_data, word_text,
)
from ...presets import PRESETS, load_order, preset_order
from ..base import BianchiCommand


class Command(BianchiCommand):
    help = 'Index of SL2(R) in SL2(O), or of Gamma_0(p) in PSL2(Z), with coset representatives'
    form_class = IndexForm
    name = 'index'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--suborder', help='Preset name or JSON file of the suborder R')
        parser.add_argument('--gamma0', type=int, metavar='P', help='Index of Gamma_0(P) in PSL2(Z)')
        parser.add_argument('--orbits', action='store_true', help='Count cosets through cusp orbits')
        parser.add_argument('--cusps', help='Cusp centers of the further orbits, ";"-separated')
        parser.add_argument('--bound', type=int, help='Denominator norm bound for the domain')
        parser.add_argument('--cap', type=int, help='Coset table cap')
        parser.add_argument('--budget', type=float, help='Seconds the computation should take at most')

    def compute(self, config):
        start = time.perf_counter()
        if config['gamma0']:
            payload = self.gamma0(config)
        else:
            payload = self.suborder(config)
        elapsed = time.perf_counter() - start
        if config['budget'] is not None:
            payload['within_budget'] = elapsed <= config['budget']
            if not payload['within_budget']:
                self.stderr.write(f"index took {elapsed:.1f}s, over the budget of {config['budget']}s")
        return payload

    def gamma0(self, config):
        p = config['gamma0']
        integers = preset_order('integers')
        member = gamma0_member(p)
        if config['orbits']:
            data = gamma0_orbit_data(p, integers.algebra)
            reps = coset_reps_from_orbits(data, member)
            return {'group': f"Gamma_0({p})", 'route': 'orbits', 'index': len(reps),
                    'orbit_sizes': [len(c) for _, c in data], 'representatives': reps}
        config = dict(config, preset='integers', bound=max(config['bound'], 1))
        gens = generators(self.domain(config))
        certificate = subgroup_index(gens, gamma0_key(p), relations(gens), config['cap'], member)
        return self.certificate_payload(f"Gamma_0({p})", certificate)

    def suborder(self, config):
        order = self.load(config)
        name = config['suborder']
        suborder = preset_order(name) if name in PRESETS else load_order(path=name)
        if suborder.algebra != order.algebra or not order.contains_order(suborder):
            raise BianchiError(f"{suborder!r} is not a suborder of {order!r}")
        member = suborder_member(suborder)
        if config['orbits']:
            data = suborder_orbit_data(order, suborder, config['cusps'], cap=config['cap'])
            reps = coset_reps_from_orbits(data, member)
            return {'group': f"SL2({suborder.label})", 'route': 'orbits', 'index': len(reps),
                    'orbit_sizes': [len(c) for _, c in data], 'representatives': reps}
        gens = generators(self.domain(config))
        certificate = subgroup_index(gens, suborder_key(suborder), relations(gens), config['cap'], member)
        return self.certificate_payload(f"SL2({suborder.label})", certificate)

    def certificate_payload(self, group, certificate):
        return {
            'group': group,
            'route': 'discovery',
            'index': certificate.index,
            'lower': certificate.lower,
            'upper': certificate.upper,
            'certified': certificate.certified,
            'representatives': [word_text(w) for w in certificate.representatives],
            'subgroup_generators': len(certificate.subgroup_words),
        }
