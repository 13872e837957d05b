use serde::Serialize;

use crate::scalar::Real;

/// Exact success statistics of a RAC protocol.
///
/// `per_input` is stored row-major: one row per input string (indexed with
/// the first dit most significant) and one column per question `y = 1..=n`.
/// `worst_case` is the minimum over input strings of the success averaged
/// over questions, so a protocol that answers one question perfectly and
/// guesses the other has worst case 1/2 even when its tables are deterministic.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuccessReport<T> {
    pub average: T,
    pub worst_case: T,
    pub inputs: usize,
    pub questions: usize,
    pub per_input: Vec<T>,
}

impl<T: Real> SuccessReport<T> {
    pub fn from_per_input(inputs: usize, questions: usize, per_input: Vec<T>) -> Self {
        assert_eq!(per_input.len(), inputs * questions);
        assert!(inputs > 0 && questions > 0);
        let q = T::from_count(questions);
        let row_means = per_input
            .chunks(questions)
            .map(|row| row.iter().copied().sum::<T>() / q);
        let worst_case = row_means.fold(T::infinity(), T::min);
        let average = per_input.iter().copied().sum::<T>() / T::from_count(per_input.len());
        Self {
            average,
            worst_case,
            inputs,
            questions,
            per_input,
        }
    }

    /// Success probability for input index `input` and question `y` (1-based).
    pub fn get(&self, input: usize, y: usize) -> T {
        self.per_input[input * self.questions + (y - 1)]
    }

    /// Smallest success probability over every (input, question) pair.
    pub fn min_entry(&self) -> T {
        self.per_input.iter().copied().fold(T::infinity(), T::min)
    }
}
