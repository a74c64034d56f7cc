"""Boot the app in-process and hit /health and a tiny /api/run.

Usage: python scripts/smoke_app.py
"""
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

SMOKE_RUN = {'command': 'build-config', 'N': 2, 'n': 3, 'field': 'prime:7', 'timing': False}


def main() -> int:
    from app import create_app

    app = create_app()
    print('APP_CREATED', app.name)
    print('ROUTES:', sorted([r.rule for r in app.url_map.iter_rules()]))
    client = app.test_client()

    health = client.get('/health')
    print('HEALTH:', health.status_code, health.get_json())
    if health.status_code != 200:
        return 1

    res = client.post('/api/run', json=SMOKE_RUN)
    body = res.get_json() or {}
    print(f"RUN: http={res.status_code} observed={body.get('observed')} exit_status={body.get('exit_status')}")
    if res.status_code != 200 or body.get('exit_status') != 0:
        return 1
    primes = body['result']['counts']['primes']
    if primes != 12:
        print(f'RUN: expected 12 primes, got {primes}')
        return 1
    return 0


if __name__ == '__main__':
    sys.exit(main())
