"""Published reference values for the tables reproduced by this package.

These are the printed numbers the `reproduce` reports compare against.
Layouts:

* TABLE1: contaminated-Exp(1) study; {n: {weight_spec: (bias, mse)}}.
* TABLE2: IG estimator study; {(mu, lam): {weight_spec: {n: row}}} with
  row = (sim_mean, asym_mean, sim_sd, asym_sd).
* TABLE3: runoff example; list of (exponent a, note, lambda_hat).
* TABLE4: NB tuning study at mu = 2.5; {(family, nu, target, criterion):
  (optimum, n_scaled_minimum)}.
* TABLE5: mites example; {target: ([(alpha, estimate, note), ...], mm)}.
* EXP_OPTIMA: {n: (mse_optimal_a, mse_optimal_u)} at lam = 1.
"""

TABLE1 = {
    10:  {"pow:a=0.9": (-0.280, 0.107), "geom1m:u=0.9": (-0.277, 0.105),
          "log1p": (-0.206, 0.100), "identity": (-0.304, 0.114)},
    25:  {"pow:a=0.9": (-0.343, 0.126), "geom1m:u=0.9": (-0.341, 0.125),
          "log1p": (-0.271, 0.091), "identity": (-0.366, 0.140)},
    50:  {"pow:a=0.9": (-0.305, 0.098), "geom1m:u=0.9": (-0.303, 0.097),
          "log1p": (-0.238, 0.067), "identity": (-0.328, 0.111)},
    100: {"pow:a=0.9": (-0.308, 0.098), "geom1m:u=0.9": (-0.306, 0.096),
          "log1p": (-0.241, 0.063), "identity": (-0.330, 0.111)},
}

TABLE1_CONTAMINATION = (0.1, 5.0)  # fraction, additive shift

# row = (sim mean, asym mean, sim sd, asym sd)
TABLE2 = {
    (1, 1): {
        "const":        {100: (1.103, 1.120, 0.258, 0.283),
                         250: (1.045, 1.048, 0.169, 0.179),
                         500: (1.023, 1.024, 0.122, 0.126)},
        "pow:a=-1/3":   {100: (1.125, 1.138, 0.306, 0.312),
                         250: (1.053, 1.055, 0.193, 0.198),
                         500: (1.027, 1.028, 0.138, 0.140)},
        "pow:a=-2/3":   {100: (1.026, 1.025, 0.158, 0.151),
                         250: (1.010, 1.010, 0.098, 0.096),
                         500: (1.006, 1.005, 0.069, 0.068)},
        "recip":        {100: (1.031, 1.030, 0.149, 0.141),
                         250: (1.012, 1.012, 0.091, 0.089),
                         500: (1.006, 1.006, 0.064, 0.063)},
        "pow:a=-4/3":   {100: (1.032, 1.031, 0.151, 0.143),
                         250: (1.013, 1.013, 0.093, 0.091),
                         500: (1.007, 1.006, 0.065, 0.064)},
    },
    (3, 1): {
        "const":        {100: (1.213, 1.300, 0.365, 0.447),
                         250: (1.098, 1.120, 0.245, 0.283),
                         500: (1.053, 1.060, 0.180, 0.200)},
        "pow:a=-1/3":   {100: (1.243, 1.294, 0.442, 0.451),
                         250: (1.104, 1.118, 0.274, 0.285),
                         500: (1.055, 1.059, 0.194, 0.202)},
        "pow:a=-2/3":   {100: (1.020, 1.019, 0.160, 0.156),
                         250: (1.008, 1.008, 0.100, 0.099),
                         500: (1.004, 1.004, 0.070, 0.070)},
        "recip":        {100: (1.031, 1.030, 0.149, 0.141),
                         250: (1.012, 1.012, 0.091, 0.089),
                         500: (1.006, 1.006, 0.064, 0.063)},
        "pow:a=-4/3":   {100: (1.033, 1.032, 0.154, 0.146),
                         250: (1.013, 1.013, 0.094, 0.093),
                         500: (1.007, 1.006, 0.066, 0.065)},
    },
    (1, 3): {
        "const":        {100: (3.172, 3.180, 0.595, 0.600),
                         250: (3.071, 3.072, 0.378, 0.379),
                         500: (3.036, 3.036, 0.267, 0.268)},
        "pow:a=-1/3":   {100: (3.207, 3.216, 0.677, 0.675),
                         250: (3.085, 3.086, 0.427, 0.427),
                         500: (3.043, 3.043, 0.301, 0.302)},
        "pow:a=-2/3":   {100: (3.087, 3.085, 0.462, 0.440),
                         250: (3.035, 3.034, 0.284, 0.278),
                         500: (3.018, 3.017, 0.199, 0.197)},
        "recip":        {100: (3.093, 3.090, 0.448, 0.424),
                         250: (3.037, 3.036, 0.274, 0.268),
                         500: (3.019, 3.018, 0.192, 0.190)},
        "pow:a=-4/3":   {100: (3.095, 3.092, 0.449, 0.426),
                         250: (3.038, 3.037, 0.275, 0.269),
                         500: (3.020, 3.018, 0.193, 0.191)},
    },
    (3, 3): {
        "const":        {100: (3.309, 3.360, 0.775, 0.849),
                         250: (3.134, 3.144, 0.506, 0.537),
                         500: (3.069, 3.072, 0.366, 0.379)},
        "pow:a=-1/3":   {100: (3.374, 3.415, 0.918, 0.937),
                         250: (3.159, 3.166, 0.580, 0.593),
                         500: (3.081, 3.083, 0.413, 0.419)},
        "pow:a=-2/3":   {100: (3.078, 3.076, 0.475, 0.454),
                         250: (3.031, 3.031, 0.293, 0.287),
                         500: (3.017, 3.015, 0.206, 0.203)},
        "recip":        {100: (3.093, 3.090, 0.448, 0.424),
                         250: (3.037, 3.036, 0.274, 0.268),
                         500: (3.019, 3.018, 0.192, 0.190)},
        "pow:a=-4/3":   {100: (3.097, 3.094, 0.453, 0.430),
                         250: (3.039, 3.038, 0.278, 0.272),
                         500: (3.020, 3.019, 0.195, 0.192)},
    },
}

TABLE2_EXPONENTS = {"const": 0.0, "pow:a=-1/3": -1.0 / 3.0,
                    "pow:a=-2/3": -2.0 / 3.0, "recip": -1.0,
                    "pow:a=-4/3": -4.0 / 3.0}

# (a, note, lambda_hat); tuned columns carry the criterion they optimize
TABLE3 = [
    (-1.5,   "fixed",                 1.423),
    (-1.0,   "ml; variance-optimal",  1.440),
    (-0.668, "bias-optimal",          1.429),
    (-0.125, "bias-optimal a>-1/2",   1.511),
    (-0.109, "variance-optimal a>-1/2", 1.511),
    (0.0,    "mm",                    1.512),
    (0.5,    "fixed",                 1.529),
]

# key: (family, nu, target, criterion) -> (optimum, n-scaled minimum)
TABLE4 = {
    ("geom", 1.0, "nb_nu", "variance"): (0.751, 5.095),
    ("geom", 1.0, "nb_nu", "bias"): (0.620, 5.093),
    ("geom", 1.0, "nb_pi", "variance"): (0.751, 0.271),
    ("geom", 1.0, "nb_pi", "bias"): (0.544, 0.920),
    ("geom", 1.5, "nb_nu", "variance"): (0.771, 14.271),
    ("geom", 1.5, "nb_nu", "bias"): (0.668, 10.102),
    ("geom", 1.5, "nb_pi", "variance"): (0.771, 0.407),
    ("geom", 1.5, "nb_pi", "bias"): (0.595, 1.144),
    ("geom", 2.5, "nb_nu", "variance"): (0.805, 59.113),
    ("geom", 2.5, "nb_nu", "bias"): (0.727, 26.022),
    ("geom", 2.5, "nb_pi", "variance"): (0.805, 0.641),
    ("geom", 2.5, "nb_pi", "bias"): (0.650, 1.475),
    ("shiftpow", 1.0, "nb_nu", "variance"): (-0.489, 5.002),
    ("shiftpow", 1.0, "nb_nu", "bias"): (-0.990, 5.311),
    ("shiftpow", 1.0, "nb_pi", "variance"): (-0.489, 0.267),
    ("shiftpow", 1.0, "nb_pi", "bias"): (-0.990, 0.985),
    ("shiftpow", 1.5, "nb_nu", "variance"): (-0.332, 14.130),
    ("shiftpow", 1.5, "nb_nu", "bias"): (-0.861, 10.440),
    ("shiftpow", 1.5, "nb_pi", "variance"): (-0.332, 0.404),
    ("shiftpow", 1.5, "nb_pi", "bias"): (-0.990, 1.205),
    ("shiftpow", 2.5, "nb_nu", "variance"): (-0.097, 58.908),
    ("shiftpow", 2.5, "nb_nu", "bias"): (-0.470, 26.680),
    ("shiftpow", 2.5, "nb_pi", "variance"): (-0.097, 0.639),
    ("shiftpow", 2.5, "nb_pi", "bias"): (-0.896, 1.544),
}

TABLE4_MU = 2.5
TABLE4_NUS = (1.0, 1.5, 2.5)

TABLE5 = {
    "nb_nu": ([(0.25, 0.967, ""), (0.5, 0.963, ""), (0.530, 0.967, "bias-optimal"),
               (0.690, 1.009, "variance-optimal"), (0.75, 1.032, "")], 1.167),
    "nb_pi": ([(0.222, 0.459, "bias-optimal"), (0.25, 0.457, ""), (0.5, 0.456, ""),
               (0.690, 0.468, "variance-optimal"), (0.75, 0.474, "")], 0.504),
}

EXP_OPTIMA = {10: (0.952, 0.918), 25: (0.978, 0.963),
              50: (0.988, 0.981), 100: (0.994, 0.990)}
