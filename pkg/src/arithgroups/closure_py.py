"""Pure-Python breadth-first closure over Z/m.

Same contract as the compiled kernel in _closure.pyx, but with matrices
encoded as arbitrary-precision ints, so there is no size limit on n or m.
"""

from collections import deque


def bfs_closure_py(gens, n, m, cap, keep_elements):
    """Close the identity under right multiplication by the generators.

    gens: list of flat tuples (length n*n) of entries mod m.
    Returns (order, truncated, elements or None).
    """
    bits = max(1, (m - 1).bit_length())
    mask = (1 << bits) - 1
    nn = n * n
    gen_rows = [tuple(x % m for x in g) for g in gens]

    def encode(flat):
        code = 0
        for i in range(nn - 1, -1, -1):
            code = (code << bits) | flat[i]
        return code

    def decode(code):
        return tuple((code >> (bits * i)) & mask for i in range(nn))

    ident = tuple(1 % m if i == j else 0 for i in range(n) for j in range(n))
    start = encode(ident)
    seen = {start}
    queue = deque([start])
    order_list = [start] if keep_elements else None
    truncated = False
    rng = range(n)
    while queue:
        code = queue.popleft()
        cur = decode(code)
        for g in gen_rows:
            prod = []
            for i in rng:
                base = i * n
                for j in rng:
                    acc = 0
                    for k in rng:
                        acc += cur[base + k] * g[k * n + j]
                    prod.append(acc % m)
            pcode = encode(prod)
            if pcode not in seen:
                seen.add(pcode)
                if len(seen) > cap:
                    truncated = True
                    break
                queue.append(pcode)
                if order_list is not None:
                    order_list.append(pcode)
        if truncated:
            break
    elements = None
    if keep_elements and not truncated:
        elements = [decode(c) for c in order_list]
    return len(seen), truncated, elements
