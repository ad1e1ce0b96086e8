#![allow(dead_code)]

use multishift::Word;

/// Parses a binary word, ignoring whitespace.
pub fn bin(s: &str) -> Word {
    Word::parse(s, 2).unwrap()
}

/// The 2-shift order-5 word produced by the prefer-largest rule.
pub const GREEDY_2_5: &str =
    "0000011111 1101110101 1011101100 1110011001 0100110001 0000101010 0010000";

/// The interleaved 2-shift order-5 word; `_1` / `_2` mark letters taken from
/// the first / second base sequence.
pub const INTERLEAVE_2_5_TAGGED: &str = "000001_201_200_200_2 \
    1_11_21_11_21_10_20_10_21_11_20_11_20_10_2 \
    1_10_21_11_21_11_20_10_21_10_20_11_20_11_2 \
    1_10_21_10_21_11_20_11_21_10_20_10_20_11_2 \
    1_11_21_10_21_10_20_11_21_11_20_10_20_1";

pub fn strip_tags(s: &str) -> String {
    s.replace("_1", "").replace("_2", "").replace(' ', "")
}

/// A 3-shift sequence of order 4 used to seed the (m, n) = (3, 7) instance.
pub const TAU_3_4: &str = "000 011 111 111 011 010 110 110 010 001 101 101 001 000 1001000";

pub const EXCLUDED_3_7: [&str; 15] = [
    "0000111", "0111111", "1111110", "1110110", "0110101", "0101101", "1101100", "1100100",
    "0100011", "0011011", "1011010", "1010010", "0010001", "0001001", "1001000",
];

/// One of the longest words outside `S*` for the (3, 7) instance.
pub const LONGEST_3_7: &str = "0000111111 1101101011 0110010001 1011010010 0010010001 \
    110000111111110110101101100100 011011010010001001000";
