"""Run the base case and the certificate chain over several fields and compare verdicts.

Usage:
  python scripts/backend_agreement.py --n 3 --N-max 4 --primes 7,13,31
  python scripts/backend_agreement.py --n 3 --skip-cyclotomic

Prime fields whose order is not 1 mod n are skipped with a notice.
"""
import argparse
import os
import sys
import json

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from algebra.coeff import FieldSpec
from algebra.groebner import ResourceGuard
from config import load_config
from fermat.certify import verify_chain


def main():
    p = argparse.ArgumentParser()
    p.add_argument('--n', type=int, default=3)
    p.add_argument('--N-max', dest='N_max', type=int, default=4)
    p.add_argument('--primes', default='7,13,31', help='comma separated list of primes')
    p.add_argument('--skip-cyclotomic', action='store_true')
    args = p.parse_args()

    fields = [] if args.skip_cyclotomic else [FieldSpec.cyclotomic(args.n)]
    for raw in args.primes.split(','):
        try:
            field = FieldSpec.prime(int(raw), args.n)
        except ValueError as exc:
            print(f'  skipping prime:{raw}: {exc}')
            continue
        fields.append(field)

    verdicts = {}
    for field in fields:
        guard = ResourceGuard.from_config(load_config())
        reports = verify_chain(args.N_max, args.n, field, guard)
        verdicts[field.label] = [(r.N, r.verdict, r.symbolic['passed']) for r in reports]
        print(f'{field.label}: ' + ', '.join(f'N={N} {v}' for N, v, _ in verdicts[field.label]))

    distinct = {json.dumps(v) for v in verdicts.values()}
    if len(distinct) > 1:
        print('\nbackends DISAGREE:')
        print(json.dumps(verdicts, indent=2))
        return 1
    print(f'\nall {len(verdicts)} backends agree')
    return 0


if __name__ == '__main__':
    sys.exit(main())
