"""Per-length search defaults and LTE baseline polynomials.

One row per LTE interleaver length from 40 to 1504: the evaluation SNR in
dB, the number of spectrum terms used at that length, and the standard's
interleaver coefficients (q1, q2) serving as the ratio baseline. The term
count steps down with length (9, 7, 5, 3, then 1 beyond 816) because the
spectrum computation grows with L.
"""

from dataclasses import dataclass

from .qpp import Qpp


@dataclass(frozen=True)
class LengthDefaults:
    L: int
    snr_db: float
    num_dist: int
    q1: int
    q2: int

    @property
    def baseline(self) -> Qpp:
        return Qpp(self.L, self.q1, self.q2)


_ROWS = [
    # L, snr_db, num_dist, q1, q2
    (40, 7.5, 9, 3, 10),
    (48, 7.5, 9, 7, 12),
    (56, 7.5, 9, 19, 42),
    (64, 7.5, 9, 7, 16),
    (72, 7.5, 9, 7, 18),
    (80, 6.5, 9, 11, 20),
    (88, 6.5, 9, 5, 22),
    (96, 6.5, 9, 11, 24),
    (104, 6.0, 9, 7, 26),
    (112, 6.0, 9, 41, 84),
    (120, 6.0, 7, 103, 90),
    (128, 5.5, 7, 15, 32),
    (136, 5.5, 7, 9, 34),
    (144, 5.0, 7, 17, 108),
    (152, 5.0, 7, 9, 38),
    (160, 5.0, 7, 21, 120),
    (168, 5.0, 7, 101, 84),
    (176, 5.0, 7, 21, 44),
    (184, 5.0, 7, 57, 46),
    (192, 4.5, 7, 23, 48),
    (200, 4.5, 7, 13, 50),
    (208, 4.5, 7, 27, 52),
    (216, 4.5, 7, 11, 36),
    (224, 4.5, 7, 27, 56),
    (232, 4.5, 7, 85, 58),
    (240, 4.5, 7, 29, 60),
    (248, 4.5, 7, 33, 62),
    (256, 4.5, 7, 15, 32),
    (264, 4.0, 7, 17, 198),
    (272, 4.0, 7, 33, 68),
    (280, 4.0, 7, 103, 210),
    (288, 4.0, 7, 19, 36),
    (296, 4.0, 5, 19, 74),
    (304, 4.0, 5, 37, 76),
    (312, 4.0, 5, 19, 78),
    (320, 4.0, 5, 21, 120),
    (328, 4.0, 5, 21, 82),
    (336, 3.5, 5, 115, 84),
    (344, 3.5, 5, 193, 86),
    (352, 3.5, 5, 21, 44),
    (360, 3.5, 5, 133, 90),
    (368, 3.5, 5, 81, 46),
    (376, 3.5, 5, 45, 94),
    (384, 3.0, 5, 23, 48),
    (392, 3.0, 5, 243, 98),
    (400, 3.0, 5, 151, 40),
    (408, 3.0, 5, 155, 102),
    (416, 3.0, 5, 25, 52),
    (424, 3.0, 5, 51, 106),
    (432, 3.0, 5, 47, 72),
    (440, 3.0, 5, 91, 110),
    (448, 3.0, 3, 29, 168),
    (456, 3.0, 3, 29, 114),
    (464, 3.0, 3, 247, 58),
    (472, 3.0, 3, 29, 118),
    (480, 3.0, 3, 89, 180),
    (488, 3.0, 3, 91, 122),
    (496, 3.0, 3, 157, 62),
    (504, 3.0, 3, 55, 84),
    (512, 3.0, 3, 31, 64),
    (528, 3.0, 3, 17, 66),
    (544, 3.0, 3, 35, 68),
    (560, 3.0, 3, 227, 420),
    (576, 3.0, 3, 65, 96),
    (592, 3.0, 3, 19, 74),
    (608, 2.75, 3, 37, 76),
    (624, 2.75, 3, 41, 234),
    (640, 2.75, 3, 39, 80),
    (656, 2.75, 3, 185, 82),
    (672, 2.75, 3, 43, 252),
    (688, 2.75, 3, 21, 86),
    (704, 2.75, 3, 155, 44),
    (720, 2.75, 3, 79, 120),
    (736, 2.75, 3, 139, 92),
    (752, 2.75, 3, 23, 94),
    (768, 2.75, 3, 217, 48),
    (784, 2.75, 3, 25, 98),
    (800, 2.75, 3, 17, 80),
    (816, 2.75, 3, 127, 102),
    (832, 2.75, 1, 25, 52),
    (848, 2.75, 1, 239, 106),
    (864, 2.75, 1, 17, 48),
    (880, 2.75, 1, 137, 110),
    (896, 2.75, 1, 215, 112),
    (912, 2.75, 1, 29, 114),
    (928, 2.75, 1, 15, 58),
    (944, 2.75, 1, 147, 118),
    (960, 2.5, 1, 29, 60),
    (976, 2.5, 1, 59, 122),
    (992, 2.25, 1, 65, 124),
    (1008, 2.0, 1, 55, 84),
    (1024, 2.0, 1, 31, 64),
    (1056, 2.0, 1, 17, 66),
    (1088, 2.0, 1, 171, 204),
    (1120, 2.0, 1, 67, 140),
    (1152, 2.0, 1, 35, 72),
    (1184, 2.0, 1, 19, 74),
    (1216, 2.0, 1, 39, 76),
    (1248, 2.0, 1, 19, 78),
    (1280, 2.0, 1, 199, 240),
    (1312, 2.0, 1, 21, 82),
    (1344, 2.0, 1, 211, 252),
    (1376, 2.0, 1, 21, 86),
    (1408, 2.0, 1, 43, 88),
    (1440, 2.0, 1, 149, 60),
    (1472, 2.0, 1, 45, 92),
    (1504, 2.0, 1, 49, 846),
]

DEFAULTS: dict[int, LengthDefaults] = {
    L: LengthDefaults(L, snr, m, q1, q2) for L, snr, m, q1, q2 in _ROWS
}

LENGTHS = tuple(sorted(DEFAULTS))


def defaults_for(L: int) -> LengthDefaults:
    try:
        return DEFAULTS[L]
    except KeyError:
        raise KeyError(f"no defaults for L={L}; known lengths are {LENGTHS[0]}..{LENGTHS[-1]}") from None
