//! Published pattern listings used by `msq report` for reconciliation.
//!
//! Strings are copied verbatim, including the ones with the wrong length;
//! the reconciliation report says which of them match the enumerated data.

pub struct ClassListing {
    pub family: &'static str,
    pub order: usize,
    pub corpus: u64,
    pub patterns: &'static [&'static str],
    /// Not always aligned with `patterns`.
    pub counts: &'static [u64],
}

pub const CLASSES: &[ClassListing] = &[
    ClassListing { family: "general", order: 3, corpus: 1, patterns: &["010111010"], counts: &[1] },
    ClassListing {
        family: "associative",
        order: 4,
        corpus: 48,
        patterns: &["0101101010100101", "0011110011000011"],
        counts: &[24, 24],
    },
    ClassListing {
        family: "general",
        order: 4,
        corpus: 880,
        patterns: &[
            "0011001111001100",
            "0101110000111010",
            "0011110011000011",
            "0011110000111100",
            "0011101001011100",
            "0101101010100101",
            "0011010110101100",
            "0101101001011010",
        ],
        counts: &[44, 48, 212, 192, 80, 212, 48, 44],
    },
    ClassListing {
        family: "ultra",
        order: 5,
        corpus: 16,
        patterns: &["1001101011001001101011001", "0010010101111111010100100"],
        counts: &[8, 8],
    },
    ClassListing {
        family: "associative",
        order: 5,
        corpus: 48544,
        patterns: &[
            "10101001001111110010010101",
            "1001101011001001101011001",
            "1001111010001000101111001",
            "0001011001111111001101000",
            "000101001111111100101000",
            "10011000101111110100011001",
            "1001101000111110001011001",
            "0010010101111111010100100",
            "000011101011111010110000",
            "000010101111111101010000",
            "0101110000111110000111010",
            "0011110101001001010111100",
            "0101110011001001100111010",
            "0101111001001001001111010",
            "0010001110111110111000100",
        ],
        counts: &[864, 2180, 2180, 4546, 4546, 4546, 4546, 1728, 4546, 4546, 4546, 4546, 4546, 2180, 2180, 864],
    },
];

/// Raw patterns of the order-4 corpus.
pub const RAW_GENERAL_4: &[(&str, u64)] = &[
    ("0011001111001100", 24),
    ("0011010110101100", 24),
    ("0011101001011100", 15),
    ("0011110000111100", 34),
    ("0011110011000011", 35),
    ("0101001111001010", 27),
    ("0101010110101010", 62),
    ("011001010011010", 24),
    ("01011010100101", 54),
    ("0101110000111010", 24),
    ("0110011010011001", 61),
    ("0110100101101001", 42),
    ("1001011010010110", 55),
    ("1001100101100110", 56),
    ("1010001111000101", 24),
    ("1010010101011010", 61),
    ("1010010110100101", 20),
    ("1010101001010101", 55),
    ("1010110000110101", 12),
    ("1100001100111100", 60),
    ("1100001111000011", 41),
    ("1100010110100011", 26),
    ("1100101001010011", 24),
    ("1100110000110011", 20),
];

/// Raw patterns of the order-5 associative corpus.
pub const RAW_ASSOCIATIVE_5: &[(&str, u64)] = &[
    ("000010101111111101010000", 930),
    ("0000111010111110101110000", 930),
    ("0001010011111111100101000", 1011),
    ("0001011001111111001101000", 1011),
    ("0010001110111110111000100", 864),
    ("001001010111111010100100", 820),
    ("0011101110001000111011100", 1016),
    ("0011110101001001010111100", 892),
    ("010001001111111100100010", 1011),
    ("0100011001111111001100010", 1011),
    ("010110000111111000011010", 1008),
    ("010111000011110000111010", 1008),
    ("0101110011001001100111010", 962),
    ("0101111001001001001111010", 962),
    ("0110101110001000111010110", 1016),
    ("0110110101001001010110110", 892),
    ("0111000100111110010001110", 908),
    ("0111000111001001110001110", 1262),
    ("0111001101001001011001110", 1262),
    ("0111010110001000110101110", 1262),
    ("0111011100001000011101110", 1262),
    ("100001011111111101000001", 1266),
    ("1000011010111110101100001", 1266),
    ("1001100010111110100011001", 1193),
    ("1001101000111110001011001", 1193),
    ("1001101011001001101011001", 1090),
    ("1001111010001000101111001", 1090),
    ("1010100100111110010010101", 864),
    ("1010100111001001110010101", 1080),
    ("1010101101001001011010101", 1080),
    ("1010110110001000110110101", 1080),
    ("1010111100001000011110101", 1080),
    ("1011001110001000111001101", 1334),
    ("10110101010010010101010101", 1424),
    ("1100100010111110100010011", 1193),
    ("1100101000111110001010011", 1193),
    ("1100101011001001101010011", 1090),
    ("1100111010001000101110011", 1090),
    ("110100000111111100001011", 1222),
    ("1101010000111110000101011", 1222),
    ("1101010011001001100101011", 1218),
    ("1101011001001001001101011", 1218),
    ("1110001110001000111000111", 1334),
    ("1110010101001001010100111", 1424),
];

/// Raw patterns of the order-8 Franklin corpus.
pub const RAW_FRANKLIN_8: &[(&str, u64)] = &[
    ("0011001111001100001100111100110000110011110011000011001111001100", 13824),
    ("0011011011001001001101101100100100110110110010010011011011001001", 13824),
    ("0011100111000110001110011100011000111001110001100011100111000110", 13824),
    ("0011110011000011001111001100001100111100110000110011110011000011", 13824),
    ("01010101010101011010101010101000101010101010101010101010101010", 9216),
    ("0101010101010101010101010101010010101010101010101010101001010101", 9216),
    ("01", 9216),
    ("01", 9216),
    ("0101010110", 9216),
    ("0101010110", 9216),
    ("0101010110", 9216),
    ("0101010110", 9216),
    ("0110001110011100011000111001110001100011100111000110001110011100", 13824),
    ("011001101001100101100110010110011001011001100101100110011001", 13824),
    ("011010011001011001101001100101100110010110011001100110010110", 13824),
    ("0110110010010011011011001001001101101100100100110110110010010011", 13824),
    ("1001001101101100100100110110110010010011011011001001001101101100", 13824),
    ("100101100110100110010110011010011001011001101001100101100101001", 13824),
    ("10011001011001101001100101100110100110010110011001011001101010", 13824),
    ("1001110001100011100111000110001110011100011000111001110001100011", 13824),
    ("1010101001", 9216),
    ("1010101001", 9216),
    ("1010101001", 9216),
    ("1010101001", 9216),
    ("101010101010101001", 9216),
    ("101010101010101001", 9216),
    ("101010101010101001", 9216),
    ("101010101010101001", 9216),
    ("1100001100111100110000110011110011000011001111001100001100111100", 13824),
    ("1100011000111001110001100011100111000110001110011100011000111001", 13824),
    ("1100100100110110110010010011011011001001001101101100100100110110", 13824),
    ("1100110000110011110011000011001111001100001100111100110000110011", 13824),
];
