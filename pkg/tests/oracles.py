"""Frozen oracle values.

Family point values come from an independent symbolic transcription of the
displayed formulas (sympy, 20 digits) with alpha=1.3, beta=-0.7, gamma=2.1 and
z=0.3; each entry is (rho, u_theta, u_z, p). Scalars are 15-digit evaluations
of the closed forms.
"""
import math

PARAMS = {"alpha": 1.3, "beta": -0.7, "gamma": 2.1}
Z = 0.3

FAMILY_VALUES = {
    ("CouetteInnerRotating", (1, 2)): [(1.25, 0.845, 0.0, -1.1499320348631241), (1.5, 0.5055555555555554, 0.0, -1.0655030167234747), (1.75, 0.2321428571428572, 0.0, -1.0436540922708817)],
    ("CouetteInnerRotating", (1, 10)): [(3.25, 0.3613636363636364, 0.0, -0.12136109338470323), (5.5, 0.16652892561983473, 0.0, -0.08468344537820574), (7.75, 0.06766862170087976, 0.0, -0.07979330202600063)],
    ("CouetteOuterRotating", (1, 2)): [(1.25, 0.3900000000000001, 0.0, 0.011238798470209366), (1.5, 0.7222222222222223, 0.0, 0.06898772401726616), (1.75, 1.0214285714285714, 0.0, 0.18684123085837012)],
    ("CouetteOuterRotating", (1, 10)): [(3.25, 0.3863636363636364, 0.0, 0.049601659140549294), (5.5, 0.6983471074380166, 0.0, 0.20172704381120904), (7.75, 1.000733137829912, 0.0, 0.44707215601434047)],
    ("SpiralPoiseuilleInnerRotating", (1, 2)): [(1.25, 0.845, 0.0705747498158652, -1.359932034863124), (1.5, 0.5055555555555554, 0.08835531287860694, -1.2755030167234747), (1.75, 0.2321428571428572, 0.06292383408024212, -1.2536540922708816)],
    ("SpiralPoiseuilleInnerRotating", (1, 10)): [(3.25, 0.3613636363636364, 7.194941728958999, -0.3313610933847032), (5.5, 0.16652892561983473, 7.708033595487775, -0.29468344537820573), (7.75, 0.06766862170087976, 5.071214495921826, -0.2897933020260006)],
    ("SpiralPoiseuilleOuterRotating", (1, 2)): [(1.25, 0.3900000000000001, 0.0705747498158652, -0.19876120152979063), (1.5, 0.7222222222222223, 0.08835531287860694, -0.14101227598273383), (1.75, 1.0214285714285714, 0.06292383408024212, -0.02315876914162987)],
    ("SpiralPoiseuilleOuterRotating", (1, 10)): [(3.25, 0.3863636363636364, 7.194941728958999, -0.1603983408594507), (5.5, 0.6983471074380166, 7.708033595487775, -0.008272956188790953), (7.75, 1.000733137829912, 5.071214495921826, 0.23707215601434048)],
    ("SpiralPCVorticityOnInner", (1, 2)): [(1.25, 0.845, -0.9776701692401051, -0.5199320348631241), (1.5, 0.5055555555555554, -0.7338897856888996, -0.4355030167234747), (1.75, 0.2321428571428572, -0.40638221624542614, -0.4136540922708817)],
    ("SpiralPCVorticityOnInner", (1, 10)): [(3.25, 0.3613636363636364, -53.83780613572764, 0.5086389066152968), (5.5, 0.16652892561983473, -40.279994603454355, 0.5453165546217943), (7.75, 0.06766862170087976, -22.528186354597864, 0.5502066979739993)],
    ("SpiralPCVorticityOnOuter", (1, 2)): [(1.25, 0.3900000000000001, -0.7852791375437095, 0.6412387984702094), (1.5, 0.7222222222222223, -1.3072492925271137, 0.6989877240172662), (1.75, 1.0214285714285714, -1.6271745783581246, 0.8168412308583701)],
    ("SpiralPCVorticityOnOuter", (1, 10)): [(3.25, 0.3863636363636364, -151.1230077588715, 0.6796016591405493), (5.5, 0.6983471074380166, -210.48169931789178, 0.831727043811209), (7.75, 1.000733137829912, -240.26203357521396, 1.0770721560143404)],
}

UZ_DIRICHLET_BETA4_AT_1_5 = -0.504887502163469
OMEGA_R1_12 = 0.582021280666723
PEAK_12 = 1.47106851007472
PEAK_1_10 = 4.63654794585486
UP_AT_PEAK_12 = -0.126637687291409
H_AT_R1_12 = -1.16404256133345
H_AT_R2_12 = 0.917978719333277
LOWER_SQUARE_12 = 1.23370055013617
LOWER_RADIAL_12 = 3.84718677570390
CURL_FACTOR_12 = 0.306852819440055
UZ_ROBIN_GAMMA4_AT_1 = -1.61370563888011
ALPHA_THRESHOLD_12 = 2.88539008177793

# Smallest singular value of the discrete Sturm-Liouville operator on (1, 2)
# over k in 1..4 and 201 alphas in [-10, 10], from dense LU inverse iteration
# (no SVD) at n = 100, 200, 400.
SL_ORACLE_MIN = {100: 15.030709773758334, 200: 15.031571895664854, 400: 15.031784919984583}
SL_ORACLE_PER_K_400 = {1: 15.031784919984583, 2: 17.112256338237742,
                       3: 20.572792608186678, 4: 25.403122273142742}
# frozen scan threshold: half the oracle minimum
SL_THRESHOLD = 7.5

V_EPS_QUOTED = {0.1: 3 * 0.1**3 + 10.0, 1.0: 13.0}
V_EPS_EXACT = {0.1: 3 * 0.1**2 + 10.0, 1.0: 13.0}

LOG2 = math.log(2.0)
