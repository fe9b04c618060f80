"""
Todd-Coxeter coset enumeration for a finitely presented group.

Letters are integers: generator k is 2k and its inverse 2k + 1. Cosets live in
a union-find structure; following an undefined edge creates a new coset, and
every relator is forced to close up at every live coset.
"""
import logging
from collections import namedtuple

from django.conf import settings

logger = logging.getLogger(__name__)

UNDEFINED = -1

CosetResult = namedtuple('CosetResult', ['index', 'complete', 'defined'])


def inverse_letter(letter):
    return letter ^ 1


def invert_word(word):
    return [inverse_letter(x) for x in reversed(word)]


def word_letters(word, labels):
    """[(label, exponent)] -> letters, with labels indexing the generators."""
    index = {label: k for k, label in enumerate(labels)}
    letters = []
    for label, exponent in word:
        k = index[label]
        letter = 2 * k if exponent > 0 else 2 * k + 1
        letters += [letter] * abs(exponent)
    return letters


class CosetTable:
    """
    Schreier graph of the cosets of a subgroup, built by coincidence
    processing on a union-find forest.
    """

    def __init__(self, ngens, relators):
        self.nletters = 2 * ngens
        self.relators = [list(r) for r in relators]
        self.relators += [[2 * k, 2 * k + 1] for k in range(ngens)]
        self.parent = []
        self.edges = []
        self.start = self.add_coset()

    def add_coset(self):
        c = len(self.parent)
        self.parent.append(c)
        self.edges.append([UNDEFINED] * self.nletters)
        return c

    def find(self, c):
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def unify(self, c1, c2):
        pending = [(c1, c2)]
        while pending:
            a, b = pending.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            a, b = min(a, b), max(a, b)
            self.parent[b] = a
            for letter in range(self.nletters):
                n1, n2 = self.edges[a][letter], self.edges[b][letter]
                if n1 == UNDEFINED:
                    self.edges[a][letter] = n2
                elif n2 != UNDEFINED:
                    pending.append((n1, n2))

    def step(self, c, letter):
        c = self.find(c)
        target = self.edges[c][letter]
        if target == UNDEFINED:
            target = self.add_coset()
            self.edges[c][letter] = target
            self.edges[target][inverse_letter(letter)] = c
        return self.find(target)

    def follow(self, c, word):
        c = self.find(c)
        for letter in reversed(word):
            c = self.step(c, letter)
        return c

    def live(self):
        return [c for c in range(len(self.parent)) if self.find(c) == c]

    def __len__(self):
        return len(self.live())

    def enumerate(self, subgroup_words=(), cap=None):
        """
        Run the enumeration; the subgroup words are relators at the start coset.

        Returns:
            CosetResult(index, complete, defined): ``index`` is None when the
            table cap stopped the run, and ``defined`` counts cosets created
        """
        cap = cap or getattr(settings, 'BIANCHI_COSET_TABLE_CAP', 20000)
        for word in subgroup_words:
            self.unify(self.follow(self.start, word), self.start)
        visit = 0
        while visit < len(self.parent):
            c = self.find(visit)
            if c == visit:
                for relator in self.relators:
                    self.unify(self.follow(c, relator), c)
            visit += 1
            if len(self.parent) > cap:
                logger.warning(f"Coset table cap {cap} reached with {len(self)} live cosets")
                return CosetResult(None, False, len(self.parent))
        index = len(self)
        logger.info(f"Coset enumeration closed: index {index}, {len(self.parent)} cosets defined")
        return CosetResult(index, True, len(self.parent))

    def permutations(self):
        """Each generator's action on the live cosets, renumbered 0..index-1."""
        live = self.live()
        number = {c: i for i, c in enumerate(live)}
        perms = []
        for letter in range(0, self.nletters, 2):
            perms.append([number[self.find(self.edges[c][letter])] for c in live])
        return perms


def coset_enumeration(ngens, relators, subgroup_words=(), cap=None):
    return CosetTable(ngens, relators).enumerate(subgroup_words, cap)
