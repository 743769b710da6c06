"""
Searching small degrees
=======================

"""

from cuspcalc import match_family, scan_candidates

# every datum up to degree 9 with genus 0 and (C')^2 = -1
for nd in scan_candidates(9):
    hits = match_family(nd)
    tag = ", ".join(f"family {p.family} (a={p.a}, b={p.b})" for p in hits) or "not in the table"
    print(f"{str(nd):<28} {tag}")

# data outside the table pass the numerical tests but are not claimed to exist as curves
