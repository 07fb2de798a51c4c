# Static character tables. Value strings use s5 = sqrt(5), i3 = i*sqrt(3),
# i2 = i*sqrt(2). Columns follow the order headers of the printed tables.
# Each class: (name, order, size, power map g^0..g^(order-1) as column ids).

A5 = {
    "order": 60,
    "classes": [
        ("1A", 1, 1, [0]),
        ("2A", 2, 15, [0, 1]),
        ("3A", 3, 20, [0, 2, 2]),
        ("5A", 5, 12, [0, 3, 4, 4, 3]),
        ("5B", 5, 12, [0, 4, 3, 3, 4]),
    ],
    "characters": [
        ("t1", ["1", "1", "1", "1", "1"]),
        ("t2", ["3", "-1", "0", "(1+s5)/2", "(1-s5)/2"]),
        ("t3", ["3", "-1", "0", "(1-s5)/2", "(1+s5)/2"]),
        ("t4", ["4", "0", "1", "-1", "-1"]),
        ("t5", ["5", "1", "-1", "0", "0"]),
    ],
}

SL25 = {
    "order": 120,
    "classes": [
        ("1A", 1, 1, [0]),
        ("10A", 10, 12, [0, 1, 5, 2, 4, 3, 4, 2, 5, 1]),
        ("10B", 10, 12, [0, 2, 4, 1, 5, 3, 5, 1, 4, 2]),
        ("2A", 2, 1, [0, 3]),
        ("5A", 5, 12, [0, 4, 5, 5, 4]),
        ("5B", 5, 12, [0, 5, 4, 4, 5]),
        ("3A", 3, 20, [0, 6, 6]),
        ("6A", 6, 20, [0, 7, 6, 3, 6, 7]),
        ("4A", 4, 30, [0, 8, 3, 8]),
    ],
    "characters": [
        ("rho1", ["1", "1", "1", "1", "1", "1", "1", "1", "1"]),
        ("rho2", ["2", "(1-s5)/2", "(1+s5)/2", "-2", "(-1+s5)/2", "(-1-s5)/2", "-1", "1", "0"]),
        ("rho3", ["2", "(1+s5)/2", "(1-s5)/2", "-2", "(-1-s5)/2", "(-1+s5)/2", "-1", "1", "0"]),
        ("rho4", ["3", "(1+s5)/2", "(1-s5)/2", "3", "(1+s5)/2", "(1-s5)/2", "0", "0", "-1"]),
        ("rho5", ["3", "(1-s5)/2", "(1+s5)/2", "3", "(1-s5)/2", "(1+s5)/2", "0", "0", "-1"]),
        ("rho6", ["4", "-1", "-1", "4", "-1", "-1", "1", "1", "0"]),
        ("rho7", ["4", "1", "1", "-4", "-1", "-1", "1", "-1", "0"]),
        ("rho8", ["5", "0", "0", "5", "0", "0", "-1", "-1", "1"]),
        ("rho9", ["6", "-1", "-1", "-6", "1", "1", "0", "0", "0"]),
    ],
}

TWOS5 = {
    "order": 240,
    "classes": [
        ("1A", 1, 1, [0]),
        ("6B", 6, 20, [0, 1, 3, 2, 3, 4]),
        ("2B", 2, 20, [0, 2]),
        ("3A", 3, 20, [0, 3, 3]),
        ("6C", 6, 20, [0, 4, 3, 2, 3, 1]),
        ("5A", 5, 24, [0, 5, 5, 5, 5]),
        ("4A", 4, 30, [0, 6, 11, 6]),
        ("8A", 8, 30, [0, 7, 6, 7, 11, 9, 6, 9]),
        ("10A", 10, 24, [0, 8, 5, 8, 5, 11, 5, 8, 5, 8]),
        ("8B", 8, 30, [0, 9, 6, 9, 11, 7, 6, 7]),
        ("6A", 6, 20, [0, 10, 3, 11, 3, 10]),
        ("2A", 2, 1, [0, 11]),
    ],
    "characters": [
        ("gamma1", ["1", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1"]),
        ("gamma2", ["1", "-1", "-1", "1", "-1", "1", "1", "-1", "1", "-1", "1", "1"]),
        ("gamma3", ["4", "0", "0", "-2", "0", "-1", "0", "0", "1", "0", "2", "-4"]),
        ("gamma4", ["4", "-1", "2", "1", "-1", "-1", "0", "0", "-1", "0", "1", "4"]),
        ("gamma5", ["4", "1", "-2", "1", "1", "-1", "0", "0", "-1", "0", "1", "4"]),
        ("gamma6", ["4", "i3", "0", "1", "-i3", "-1", "0", "0", "1", "0", "-1", "-4"]),
        ("gamma7", ["4", "-i3", "0", "1", "i3", "-1", "0", "0", "1", "0", "-1", "-4"]),
        ("gamma8", ["5", "-1", "-1", "-1", "-1", "0", "1", "1", "0", "1", "-1", "5"]),
        ("gamma9", ["5", "1", "1", "-1", "1", "0", "1", "-1", "0", "-1", "-1", "5"]),
        ("gamma10", ["6", "0", "0", "0", "0", "1", "-2", "0", "1", "0", "0", "6"]),
        ("gamma11", ["6", "0", "0", "0", "0", "1", "0", "i2", "-1", "-i2", "0", "-6"]),
        ("gamma12", ["6", "0", "0", "0", "0", "1", "0", "-i2", "-1", "i2", "0", "-6"]),
    ],
}

# Fixed-point patterns as printed: "0" = some fixed vector, "-" = none.
EXPECTED_PATTERNS = {
    "A5": [
        "0 0 0 0 0",
        "0 0 0 0 0",
        "0 0 0 0 0",
        "0 0 0 - -",
        "0 0 0 0 0",
    ],
    "SL25": [
        "0 0 0 0 0 0 0 0 0",
        "0 - - - - - - - -",
        "0 - - - - - - - -",
        "0 0 0 0 0 0 0 0 0",
        "0 0 0 0 0 0 0 0 0",
        "0 - - 0 - - 0 0 0",
        "0 - - - - - 0 - -",
        "0 0 0 0 0 0 0 0 0",
        "0 - - - 0 0 0 - -",
    ],
    "TwoS5": [
        "0 0 0 0 0 0 0 0 0 0 0 0",
        "0 - - 0 - 0 0 - 0 - 0 0",
        "0 - 0 - - - - - - - - -",
        "0 0 0 0 0 - 0 0 - 0 0 0",
        "0 0 0 0 0 - 0 0 - 0 0 0",
        "0 0 0 0 0 - - - - - - -",
        "0 0 0 0 0 - - - - - - -",
        "0 - 0 0 - 0 0 0 0 0 0 0",
        "0 0 0 0 0 0 0 0 0 0 0 0",
        "0 0 0 0 0 0 0 0 0 0 0 0",
        "0 0 0 0 0 0 - - - - - -",
        "0 0 0 0 0 0 - - - - - -",
    ],
}

# Reps whose semidirect action realizes a quad pattern.
PATTERN_OF_REP = {
    ("A5", "t1"): "F1a",
    ("A5", "t4"): "F1b",
    ("SL25", "rho1"): "F2a",
    ("SL25", "rho2"): "F2b",
    ("SL25", "rho6"): "F2c",
    ("SL25", "rho7"): "F2d",
    ("SL25", "rho9"): "F2e",
    ("TwoS5", "gamma1"): "F3a",
    ("TwoS5", "gamma6"): "F3b",
    ("TwoS5", "gamma3"): "F3c",
}
