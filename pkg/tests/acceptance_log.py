RESULTS = {}


def record(n, ok, detail):
    RESULTS[n] = (ok, detail)
