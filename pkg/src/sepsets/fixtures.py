"""Built-in example documents exercising every registered law.

Three documents: a three-atom carrier with a separating pair of functions
(`ex`), a two-point metric structure (`metric`), and a two-index global
family with genuinely different fibers (`global2`).  Together their checks
cover the whole law registry.
"""

from __future__ import annotations

EX = """\
# Three atoms; f alone merges a and b, f with g separates everything.

set X
  atoms = a b c

fn f
  on = X
  values = a:0 b:0 c:1

fn g
  on = X
  values = a:0 b:1 c:1

family Fsingle
  on = X
  members = f

family Fpair
  on = X
  members = f g

ineq XI
  base = X
  induced-by = Fpair

set Xc
  atoms = a b c
  blocks = {a b} {c}

fn fc
  on = Xc
  values = a:0 b:0 c:1

family Fc
  on = Xc
  members = fc

ineq XIc
  base = Xc
  induced-by = Fc

fn idc
  on = Xc
  to = Xc
  values = a:a b:b c:c

set Y
  atoms = p q

fn u
  on = Y
  values = p:0 q:1

family G
  on = Y
  members = u

ineq YI
  base = Y
  induced-by = G

set R
  atoms = z0 z1

fn idr
  on = R
  values = z0:0 z1:1

family IDR
  on = R
  members = idr

ineq RI
  base = R
  induced-by = IDR

setfamily SF
  index = YI
  fiber.p = RI
  fiber.q = RI
  transport.p.p = id
  transport.q.q = id

csfamily CSF
  index = YI
  indexfamily = G
  fiber.p = RI
  fiber.q = RI
  fiberfamily.p = IDR
  fiberfamily.q = IDR
  transport.p.p = id
  transport.q.q = id
  fntransport.p.p = id
  fntransport.q.q = id

fn fsr
  on = X
  to = R
  values = a:z0 b:z0 c:z1

fn gsr
  on = X
  to = R
  values = a:z0 b:z1 c:z1

check axioms
  law = ineq-axioms
  target = XI
  require = Ineq1 Ineq2 Ineq3 Ineq4 Ineq5 Ineq6

check basic-laws
  law = f1
  ineq = XI
  family = Fpair

check growing
  law = monotonicity
  on = X
  family = Fsingle
  superfamily = Fpair

check separated
  law = complsep
  ineq = XI
  family = Fpair

check identity-affine
  law = affine
  fn = idc
  src-ineq = XIc
  src-family = Fc
  dst-ineq = XIc
  dst-family = Fc

check swap-family
  law = family
  target = SF

check pairs-apart
  law = sigma-apartness
  target = SF

check cs-laws
  law = cs-family
  target = CSF

check dependent-product
  law = pi-cs
  target = CSF

check restricted-pairs
  law = fcl3
  target = CSF

check free-structure
  law = free
  set = X
  ineq = XI
  family = Fpair

check free-adjoint
  law = free-adjunction
  set = X
  ineq = XI
  family = Fpair

check reflect
  law = rho
  on = X
  family = Fsingle

check reflect-adjoint
  law = rho-adjunction
  a-ineq = XIc
  a-family = Fc
  on = X
  family = Fsingle

check reflect-product
  law = rho-product
  left-on = X
  left-family = Fsingle
  right-on = Y
  right-family = G

check dual-points
  law = dual
  on = X
  family = Fpair

check hom-fibers
  law = hom-family
  ineq = XI
  target = SF

check tuple-map
  law = embed
  ineq = XI
  target = SF
  h.p = fsr
  h.q = gsr

check coordinates
  law = r-power
  family = Fpair
  values = 0 1

check embedding
  law = tychonoff
  on = X
  family = Fpair
"""

METRIC = """\
# Two points at distance 3/2; the distance functions separate them.

set Z
  atoms = p q

family U0
  on = Z
  metric = (p,q):3/2

ineq ZI
  base = Z
  induced-by = U0

check metric-axioms
  law = ineq-axioms
  target = ZI
  require = Ineq1 Ineq2 Ineq3 Ineq4 Ineq5 Ineq6

check metric-separated
  law = complsep
  ineq = ZI
  family = U0

check metric-laws
  law = f1
  ineq = ZI
  family = U0

check metric-dual
  law = dual
  on = Z
  family = U0
"""

GLOBAL2 = """\
# A two-index global family with a three-atom fiber over 0 and a two-atom
# fiber over 1; the cross transports are compatible with both families.

set I
  atoms = 0 1

fn k
  on = I
  values = 0:0 1:1

family K
  on = I
  members = k

ineq II
  base = I
  induced-by = K

set X
  atoms = a b c

fn f
  on = X
  values = a:0 b:0 c:1

fn g
  on = X
  values = a:0 b:1 c:1

family FX
  on = X
  members = f g

ineq XI
  base = X
  induced-by = FX

set Y
  atoms = p q

fn u
  on = Y
  values = p:0 q:1

family GY
  on = Y
  members = u

ineq YI
  base = Y
  induced-by = GY

fn l01
  on = X
  to = Y
  values = a:p b:p c:q

fn l10
  on = Y
  to = X
  values = p:a q:c

globalfamily S
  index = II
  indexfamily = K
  fiber.0 = XI
  fiber.1 = YI
  fiberfamily.0 = FX
  fiberfamily.1 = GY
  transport.0.0 = id
  transport.1.1 = id
  transport.0.1 = l01
  transport.1.0 = l10
  fntransport.0.0 = id
  fntransport.1.1 = id
  fntransport.0.1 = f:u g:u
  fntransport.1.0 = u:f

check global-laws
  law = global-family
  target = S

check separated-pairs
  law = sigma-global
  target = S

check pick-one
  law = dep-se
  target = S
  assign = 0:a 1:p

check value-projection
  law = pr2
  target = S
"""

FIXTURES = {"ex": EX, "metric": METRIC, "global2": GLOBAL2}


def fixture_names() -> tuple[str, ...]:
    return tuple(FIXTURES)


def fixture_text(name: str) -> str:
    return FIXTURES[name]
