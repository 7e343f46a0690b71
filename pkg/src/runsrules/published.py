"""Published run-length tables, kept as the reproduction target.

Values are transcribed verbatim, including the cells believed to be
misprinted (see ``SUSPECT_TABLE1``).
"""

TABLE1_SCHEMES = (
    "1/1", "2/2", "3/3", "4/4", "5/5", "M-2/3", "2/3",
    "M-2/4", "2/4", "M-3/4", "3/4", "M-2/5", "M-3/5", "M-4/5",
)

TABLE1_LIMITS = {
    "1/1": "3",
    "2/2": "1.781",
    "3/3": "1.2",
    "4/4": "0.832",
    "5/5": "0.568",
    "M-2/3": "1.866",
    "2/3": "1.929",
    "M-2/4": "1.897",
    "2/4": "2.011",
    "M-3/4": "1.312",
    "3/4": "1.393",
    "M-2/5": "1.91",
    "M-3/5": "1.358",
    "M-4/5": "0.949",
}

# shift -> {scheme: (ARL, SD)}
TABLE1 = {
    0.0: {
        "1/1": (370.40, 369.90),
        "2/2": (370.40, 368.94),
        "3/3": (370.40, 368.03),
        "4/4": (370.40, 367.13),
        "5/5": (370.40, 366.27),
        "M-2/3": (370.40, 368.63),
        "2/3": (370.40, 368.47),
        "M-2/4": (370.40, 368.04),
        "2/4": (370.40, 368.43),
        "M-3/4": (370.40, 367.61),
        "3/4": (370.40, 367.44),
        "M-2/5": (370.40, 368.28),
        "M-3/5": (370.40, 367.30),
        "M-4/5": (370.40, 366.68),
    },
    0.2: {
        "1/1": (308.43, 307.93),
        "2/2": (276.67, 275.22),
        "3/3": (259.30, 256.96),
        "4/4": (248.54, 245.34),
        "5/5": (241.32, 237.28),
        "M-2/3": (264.79, 263.03),
        "2/3": (270.10, 268.20),
        "M-2/4": (257.81, 264.64),
        "2/4": (266.96, 255.82),
        "M-3/4": (243.10, 240.35),
        "3/4": (248.65, 245.76),
        "M-2/5": (253.39, 251.24),
        "M-3/5": (233.55, 230.48),
        "M-4/5": (231.24, 227.61),
    },
    0.4: {
        "1/1": (200.10, 199.58),
        "2/2": (150.25, 148.82),
        "3/3": (129.55, 127.26),
        "4/4": (118.70, 115.96),
        "5/5": (112.26, 108.37),
        "M-2/3": (134.92, 133.18),
        "2/3": (141.61, 139.78),
        "M-2/4": (126.61, 135.58),
        "2/4": (137.81, 124.63),
        "M-3/4": (112.01, 109.34),
        "3/4": (117.78, 115.01),
        "M-2/5": (121.52, 119.35),
        "M-3/5": (102.82, 99.83),
        "M-4/5": (101.68, 98.18),
    },
    0.6: {
        "1/1": (119.67, 119.16),
        "2/2": (78.91, 77.51),
        "3/3": (65.25, 63.02),
        "4/4": (58.99, 55.98),
        "5/5": (55.71, 51.95),
        "M-2/3": (67.89, 66.18),
        "2/3": (72.64, 70.86),
        "M-2/4": (62.24, 67.99),
        "2/4": (70.12, 60.29),
        "M-3/4": (53.79, 51.21),
        "3/4": (57.48, 54.83),
        "M-2/5": (58.85, 56.70),
        "M-3/5": (48.26, 45.37),
        "M-4/5": (48.34, 44.98),
    },
    0.8: {
        "1/1": (71.55, 71.05),
        "2/2": (43.63, 42.25),
        "3/3": (35.76, 33.59),
        "4/4": (32.63, 29.71),
        "5/5": (31.28, 27.63),
        "M-2/3": (36.64, 34.97),
        "2/3": (39.64, 37.92),
        "M-2/4": (33.22, 36.15),
        "2/4": (38.18, 31.33),
        "M-3/4": (28.83, 26.34),
        "3/4": (31.04, 28.49),
        "M-2/5": (31.21, 29.12),
        "M-3/5": (25.71, 22.93),
        "M-4/5": (26.28, 23.03),
    },
    1.0: {
        "1/1": (43.90, 43.39),
        "2/2": (25.78, 24.42),
        "3/3": (21.45, 19.34),
        "4/4": (20.06, 17.20),
        "5/5": (19.72, 16.13),
        "M-2/3": (21.44, 18.82),
        "2/3": (23.30, 21.64),
        "M-2/4": (19.42, 20.57),
        "2/4": (22.50, 17.59),
        "M-3/4": (17.23, 14.82),
        "3/4": (18.57, 16.11),
        "M-2/5": (18.26, 16.25),
        "M-3/5": (15.46, 12.78),
        "M-4/5": (16.18, 13.03),
    },
    1.2: {
        "1/1": (27.82, 27.32),
        "2/2": (16.28, 19.94),
        "3/3": (14.00, 11.92),
        "4/4": (13.54, 10.73),
        "5/5": (13.72, 10.18),
        "M-2/3": (13.56, 11.99),
        "2/3": (14.73, 13.12),
        "M-2/4": (12.37, 12.45),
        "2/4": (14.30, 10.60),
        "M-3/4": (11.36, 9.00),
        "3/4": (12.18, 9.80),
        "M-2/5": (11.70, 9.77),
        "M-3/5": (10.32, 7.72),
        "M-4/5": (11.09, 7.98),
    },
    1.4: {
        "1/1": (18.25, 17.74),
        "2/2": (10.94, 9.62),
        "3/3": (9.85, 7.79),
        "4/4": (9.91, 7.11),
        "5/5": (10.37, 6.82),
        "M-2/3": (9.21, 7.67),
        "2/3": (9.96, 8.40),
        "M-2/4": (8.49, 7.97),
        "2/4": (9.74, 6.78),
        "M-3/4": (8.14, 5.82),
        "3/4": (8.67, 6.33),
        "M-2/5": (8.11, 6.25),
        "M-3/5": (7.53, 4.98),
        "M-4/5": (8.30, 5.20),
    },
    1.6: {
        "1/1": (12.38, 11.87),
        "2/2": (7.79, 6.48),
        "3/3": (7.41, 5.35),
        "4/4": (7.77, 4.95),
        "5/5": (8.39, 4.80),
        "M-2/3": (6.67, 5.15),
        "2/3": (7.16, 5.63),
        "M-2/4": (6.23, 5.34),
        "2/4": (7.06, 4.56),
        "M-3/4": (6.26, 3.95),
        "3/4": (6.62, 4.28),
        "M-2/5": (6.02, 4.21),
        "M-3/5": (5.90, 3.37),
        "M-4/5": (6.67, 3.55),
    },
    1.8: {
        "1/1": (8.70, 8.18),
        "2/2": (5.85, 4.54),
        "3/3": (5.89, 3.82),
        "4/4": (6.44, 3.58),
        "5/5": (7.16, 3.49),
        "M-2/3": (5.10, 3.60),
        "2/3": (5.43, 3.92),
        "M-2/4": (4.84, 3.72),
        "2/4": (5.40, 3.19),
        "M-3/4": (5.11, 2.78),
        "3/4": (5.35, 3.01),
        "M-2/5": (4.72, 2.96),
        "M-3/5": (4.91, 2.36),
        "M-4/5": (5.69, 2.50),
    },
    2.0: {
        "1/1": (6.30, 5.78),
        "2/2": (4.61, 3.29),
        "3/3": (4.92, 2.81),
        "4/4": (5.59, 2.66),
        "5/5": (6.38, 2.60),
        "M-2/3": (4.10, 2.60),
        "2/3": (4.33, 2.82),
        "M-2/4": (3.95, 2.67),
        "2/4": (4.33, 2.31),
        "M-3/4": (4.38, 2.01),
        "3/4": (4.55, 2.17),
        "M-2/5": (3.89, 2.15),
        "M-3/5": (4.27, 1.70),
        "M-4/5": (5.07, 1.80),
    },
    2.2: {
        "1/1": (4.70, 4.19),
        "2/2": (3.79, 2.45),
        "3/3": (4.28, 2.12),
        "4/4": (5.03, 2.01),
        "5/5": (5.87, 1.97),
        "M-2/3": (3.44, 1.93),
        "2/3": (3.60, 2.09),
        "M-2/4": (3.35, 1.97),
        "2/4": (3.62, 1.71),
        "M-3/4": (3.91, 1.47),
        "3/4": (4.02, 1.59),
        "M-2/5": (3.33, 1.61),
        "M-3/5": (3.85, 1.26),
        "M-4/5": (4.67, 1.31),
    },
    2.4: {
        "1/1": (3.65, 3.11),
        "2/2": (3.23, 1.87),
        "3/3": (3.85, 1.63),
        "4/4": (4.66, 1.54),
        "5/5": (5.54, 1.50),
        "M-2/3": (2.99, 1.45),
        "2/3": (3.10, 1.57),
        "M-2/4": (2.95, 1.49),
        "2/4": (3.14, 1.30),
        "M-3/4": (3.59, 1.10),
        "3/4": (3.68, 1.18),
        "M-2/5": (2.94, 1.24),
        "M-3/5": (3.57, 0.95),
        "M-4/5": (4.42, 0.96),
    },
    2.6: {
        "1/1": (2.90, 2.35),
        "2/2": (2.85, 1.45),
        "3/3": (3.56, 1.26),
        "4/4": (4.42, 1.19),
        "5/5": (5.33, 1.15),
        "M-2/3": (2.68, 1.11),
        "2/3": (2.76, 1.20),
        "M-2/4": (2.66, 1.14),
        "2/4": (2.80, 1.00),
        "M-3/4": (3.39, 0.82),
        "3/4": (3.44, 0.88),
        "M-2/5": (2.66, 0.97),
        "M-3/5": (3.38, 0.72),
        "M-4/5": (4.26, 0.70),
    },
    2.8: {
        "1/1": (2.38, 1.81),
        "2/2": (2.58, 1.13),
        "3/3": (3.36, 0.98),
        "4/4": (4.26, 0.91),
        "5/5": (5.20, 0.87),
        "M-2/3": (2.47, 0.86),
        "2/3": (2.52, 0.93),
        "M-2/4": (2.46, 0.89),
        "2/4": (2.56, 0.79),
        "M-3/4": (3.25, 0.62),
        "3/4": (3.29, 0.66),
        "M-2/5": (2.46, 0.77),
        "M-3/5": (3.25, 0.56),
        "M-4/5": (4.16, 0.52),
    },
    3.0: {
        "1/1": (2.00, 1.41),
        "2/2": (2.39, 0.89),
        "3/3": (3.23, 0.76),
        "4/4": (4.16, 0.70),
        "5/5": (5.11, 0.66),
        "M-2/3": (2.32, 0.67),
        "2/3": (2.36, 0.72),
        "M-2/4": (2.32, 0.70),
        "2/4": (2.39, 0.62),
        "M-3/4": (3.16, 0.46),
        "3/4": (3.18, 0.50),
        "M-2/5": (2.32, 0.62),
        "M-3/5": (3.16, 0.44),
        "M-4/5": (4.09, 0.38),
    },
    3.5: {
        "1/1": (1.45, 0.80),
        "2/2": (2.14, 0.24),
        "3/3": (3.07, 0.40),
        "4/4": (4.04, 0.34),
        "5/5": (5.03, 0.31),
        "M-2/3": (2.11, 0.36),
        "2/3": (2.13, 0.39),
        "M-2/4": (2.12, 0.35),
        "2/4": (2.15, 0.40),
        "M-3/4": (3.05, 0.23),
        "3/4": (3.05, 0.25),
        "M-2/5": (2.12, 0.36),
        "M-3/5": (3.05, 0.23),
        "M-4/5": (4.02, 0.17),
    },
    4.0: {
        "1/1": (1.19, 0.47),
        "2/2": (2.04, 0.07),
        "3/3": (3.02, 0.19),
        "4/4": (4.01, 0.15),
        "5/5": (5.00, 0.13),
        "M-2/3": (2.03, 0.19),
        "2/3": (2.04, 0.20),
        "M-2/4": (2.04, 0.19),
        "2/4": (2.05, 0.22),
        "M-3/4": (3.01, 0.11),
        "3/4": (3.01, 0.12),
        "M-2/5": (2.04, 0.20),
        "M-3/5": (3.01, 0.11),
        "M-4/5": (4.00, 0.07),
    },
}

# shift -> (ARL, (p5, p25, p50, p75, p95)) for M-2/5
TABLE2 = {
    0.0: (370.40, (21, 108, 257, 513, 1105)),
    0.2: (253.30, (15, 74, 176, 350, 755)),
    0.4: (121.52, (8, 37, 85, 168, 360)),
    0.6: (58.85, (5, 18, 41, 81, 172)),
    0.8: (31.21, (4, 10, 22, 42, 89)),
    1.0: (18.26, (3, 7, 13, 25, 51)),
    1.2: (11.70, (2, 5, 9, 15, 31)),
    1.4: (8.11, (2, 4, 6, 11, 21)),
    1.6: (6.02, (2, 3, 5, 8, 14)),
    1.8: (4.72, (2, 3, 4, 6, 11)),
    2.0: (3.89, (2, 2, 3, 5, 8)),
    2.2: (3.33, (2, 2, 3, 4, 6)),
    2.4: (2.94, (2, 2, 3, 3, 5)),
    2.6: (2.66, (2, 2, 2, 3, 5)),
    2.8: (2.46, (2, 2, 2, 3, 4)),
    3.0: (2.32, (2, 2, 2, 3, 4)),
    3.5: (2.12, (2, 2, 2, 2, 3)),
    4.0: (2.04, (2, 2, 2, 2, 2)),
}

# shift -> (ARL, (p5, p25, p50, p75, p95)) for M-3/5
TABLE3 = {
    0.0: (370.40, (22, 109, 258, 512, 1103)),
    0.2: (233.55, (15, 69, 163, 323, 694)),
    0.4: (102.82, (8, 32, 72, 141, 302)),
    0.6: (48.26, (4, 16, 34, 66, 139)),
    0.8: (25.71, (4, 9, 19, 35, 71)),
    1.0: (15.46, (3, 6, 11, 20, 41)),
    1.2: (10.32, (3, 5, 8, 13, 26)),
    1.4: (7.53, (3, 4, 6, 9, 18)),
    1.6: (5.90, (3, 4, 5, 7, 13)),
    1.8: (4.91, (3, 3, 4, 5, 10)),
    2.0: (4.27, (3, 3, 4, 5, 8)),
    2.2: (3.85, (3, 3, 3, 4, 6)),
    2.4: (3.57, (3, 3, 3, 4, 6)),
    2.6: (3.38, (3, 3, 3, 4, 5)),
    2.8: (3.25, (3, 3, 3, 3, 4)),
    3.0: (3.16, (3, 3, 3, 3, 4)),
    3.5: (3.05, (3, 3, 3, 3, 3)),
    4.0: (3.01, (3, 3, 3, 3, 3)),
}

# shift -> (ARL, (p5, p25, p50, p75, p95)) for M-4/5
TABLE4 = {
    0.0: (370.40, (23, 109, 258, 512, 1102)),
    0.2: (231.24, (15, 69, 161, 319, 685)),
    0.4: (101.68, (9, 32, 72, 140, 298)),
    0.6: (48.34, (6, 16, 35, 66, 138)),
    0.8: (26.28, (5, 10, 19, 35, 72)),
    1.0: (16.18, (4, 7, 12, 21, 42)),
    1.2: (11.09, (4, 5, 9, 14, 27)),
    1.4: (8.30, (4, 5, 6, 10, 19)),
    1.6: (6.67, (4, 4, 5, 8, 14)),
    1.8: (5.69, (4, 4, 5, 6, 11)),
    2.0: (5.07, (4, 4, 4, 5, 9)),
    2.2: (4.67, (4, 4, 4, 5, 8)),
    2.4: (4.42, (4, 4, 4, 5, 6)),
    2.6: (4.26, (4, 4, 4, 4, 5)),
    2.8: (4.16, (4, 4, 4, 4, 5)),
    3.0: (4.09, (4, 4, 4, 4, 5)),
    3.5: (4.02, (4, 4, 4, 4, 4)),
    4.0: (4.00, (4, 4, 4, 4, 4)),
}

TABLE5_SCHEMES = ("C1234", "M-2/5", "M-3/5", "M-4/5")
TABLE5_LIMITS = {"M-2/5": 1.57098, "M-3/5": 1.04853, "M-4/5": 0.652948}

# shift -> {scheme: (ARL, SIR)}; the C1234 column is quoted from Palm (1990)
TABLE5 = {
    0.0: {
        "C1234": (94.57, 50.00),
        "M-2/5": (94.57, 50.50),
        "M-3/5": (94.57, 50.50),
        "M-4/5": (94.57, 50.00),
    },
    0.2: {
        "C1234": (66.99, 34.50),
        "M-2/5": (72.28, 38.50),
        "M-3/5": (69.51, 36.50),
        "M-4/5": (69.96, 36.50),
    },
    0.4: {
        "C1234": (36.54, 18.00),
        "M-2/5": (41.51, 22.00),
        "M-3/5": (38.27, 19.50),
        "M-4/5": (39.16, 19.50),
    },
    0.6: {
        "C1234": (20.88, 10.00),
        "M-2/5": (23.62, 12.00),
        "M-3/5": (21.65, 10.50),
        "M-4/5": (22.65, 10.50),
    },
    0.8: {
        "C1234": (13.24, 5.50),
        "M-2/5": (14.45, 7.00),
        "M-3/5": (13.51, 6.00),
        "M-4/5": (14.49, 6.50),
    },
    1.0: {
        "C1234": (9.22, 3.50),
        "M-2/5": (9.59, 4.50),
        "M-3/5": (9.28, 3.50),
        "M-4/5": (10.22, 4.00),
    },
    1.2: {
        "C1234": (6.89, 2.00),
        "M-2/5": (6.86, 3.00),
        "M-3/5": (6.92, 2.50),
        "M-4/5": (7.82, 3.00),
    },
    1.4: {
        "C1234": (5.42, 2.00),
        "M-2/5": (5.22, 1.50),
        "M-3/5": (5.53, 2.00),
        "M-4/5": (6.40, 2.00),
    },
    1.6: {
        "C1234": (4.41, 1.00),
        "M-2/5": (4.20, 1.50),
        "M-3/5": (4.66, 1.00),
        "M-4/5": (5.52, 1.00),
    },
    1.8: {
        "C1234": (3.68, 1.50),
        "M-2/5": (3.53, 1.00),
        "M-3/5": (4.10, 1.00),
        "M-4/5": (4.96, 0.50),
    },
    2.0: {
        "C1234": (3.13, 1.00),
        "M-2/5": (3.07, 1.00),
        "M-3/5": (3.74, 0.50),
        "M-4/5": (4.61, 0.50),
    },
    2.2: {
        "C1234": (2.70, 1.00),
        "M-2/5": (2.75, 0.50),
        "M-3/5": (3.49, 0.50),
        "M-4/5": (4.38, 0.00),
    },
    2.4: {
        "C1234": (2.35, 0.50),
        "M-2/5": (2.53, 0.50),
        "M-3/5": (3.32, 0.00),
        "M-4/5": (4.23, 0.00),
    },
    2.6: {
        "C1234": (2.07, 1.00),
        "M-2/5": (2.36, 0.50),
        "M-3/5": (3.21, 0.00),
        "M-4/5": (4.14, 0.00),
    },
    2.8: {
        "C1234": (1.85, 0.50),
        "M-2/5": (2.25, 0.00),
        "M-3/5": (3.13, 0.00),
        "M-4/5": (4.08, 0.00),
    },
    3.0: {
        "C1234": (1.67, 0.50),
        "M-2/5": (2.17, 0.00),
        "M-3/5": (3.08, 0.00),
        "M-4/5": (4.05, 0.00),
    },
}

# Cells whose ARL/SD pair is internally implausible (SD well above ARL where
# every neighbor has SD below ARL, or values out of line with the column).
SUSPECT_TABLE1 = frozenset(
    [(shift, scheme) for shift in (0.2, 0.4, 0.6, 0.8) for scheme in ("M-2/4", "2/4")]
    + [(1.2, "2/2")]
)
