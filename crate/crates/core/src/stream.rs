//! Lazily materialized prefixes of infinite words.

use std::fmt;
use std::sync::Mutex;

use crate::error::Result;
use crate::generators::{GeneratorSpec, Transform};
use crate::morphism::Morphism;
use crate::word::{Alphabet, Word};

/// Produces ever-longer prefixes of the infinite word described by a
/// [`GeneratorSpec`]. Prefixes are consistent across calls and threads.
pub struct PrefixStream {
    spec: GeneratorSpec,
    alphabet: Alphabet,
    state: Mutex<State>,
}

struct State {
    buf: Vec<u8>,
    engine: Engine,
}

enum Engine {
    Periodic(Vec<u8>),
    /// `buf` = image(buf[0]) image(buf[1]) ... image(buf[cursor - 1]).
    FixedPoint { morphism: Morphism, cursor: usize },
    /// `buf` holds f_n; `prev` holds f_{n-1}.
    Recurrence { prev: Vec<u8> },
    Image {
        morphism: Morphism,
        inner: Box<PrefixStream>,
        cursor: usize,
    },
    ReversalClosure {
        inserts: Vec<Word>,
        transform: Transform,
        step: usize,
    },
    Shifted { inner: Box<PrefixStream>, offset: usize },
}

impl PrefixStream {
    pub fn new(spec: GeneratorSpec) -> Result<Self> {
        let alphabet = spec.validate()?;
        let (buf, engine) = match &spec {
            GeneratorSpec::Periodic(u) => (Vec::new(), Engine::Periodic(u.letters().to_vec())),
            GeneratorSpec::FixedPoint { morphism, seed } => (
                morphism.image(*seed).letters().to_vec(),
                Engine::FixedPoint {
                    morphism: morphism.clone(),
                    cursor: 1,
                },
            ),
            GeneratorSpec::Recurrence { f0, f1 } => (
                f1.letters().to_vec(),
                Engine::Recurrence {
                    prev: f0.letters().to_vec(),
                },
            ),
            GeneratorSpec::Image { morphism, inner } => (
                Vec::new(),
                Engine::Image {
                    morphism: morphism.clone(),
                    inner: Box::new(PrefixStream::new((**inner).clone())?),
                    cursor: 0,
                },
            ),
            GeneratorSpec::ReversalClosure {
                seed,
                inserts,
                transform,
            } => (
                seed.letters().to_vec(),
                Engine::ReversalClosure {
                    inserts: inserts.clone(),
                    transform: *transform,
                    step: 0,
                },
            ),
            GeneratorSpec::Shifted { inner, offset } => (
                Vec::new(),
                Engine::Shifted {
                    inner: Box::new(PrefixStream::new((**inner).clone())?),
                    offset: *offset,
                },
            ),
        };
        Ok(PrefixStream {
            spec,
            alphabet,
            state: Mutex::new(State { buf, engine }),
        })
    }

    /// Resolves a preset name or spec string.
    pub fn resolve(text: &str) -> Result<Self> {
        PrefixStream::new(GeneratorSpec::resolve(text)?)
    }

    pub fn spec(&self) -> &GeneratorSpec {
        &self.spec
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    /// The first `n` letters.
    pub fn prefix(&self, n: usize) -> Word {
        self.with_prefix(n, |letters| Word::from_letters_unchecked(letters.to_vec()))
    }

    pub fn letter(&self, i: usize) -> u8 {
        self.with_prefix(i + 1, |letters| letters[i])
    }

    /// Runs `f` on the first `n` letters without copying them out.
    pub fn with_prefix<R>(&self, n: usize, f: impl FnOnce(&[u8]) -> R) -> R {
        let mut state = self.state.lock().unwrap_or_else(|e| e.into_inner());
        state.grow(n);
        f(&state.buf[..n])
    }

    /// The stream whose `i`-th letter is the `(i + k)`-th letter of `self`.
    pub fn shift(&self, k: usize) -> PrefixStream {
        PrefixStream::new(self.spec.clone().shifted(k)).expect("shift of a valid spec is valid")
    }
}

impl State {
    fn grow(&mut self, n: usize) {
        let buf = &mut self.buf;
        while buf.len() < n {
            match &mut self.engine {
                Engine::Periodic(period) => {
                    let missing = n - buf.len();
                    let start = buf.len() % period.len();
                    buf.extend(period.iter().cycle().skip(start).take(missing));
                }
                Engine::FixedPoint { morphism, cursor } => {
                    let letter = buf[*cursor];
                    buf.extend_from_slice(morphism.image(letter).letters());
                    *cursor += 1;
                }
                Engine::Recurrence { prev } => {
                    let next_prev = buf.clone();
                    buf.extend_from_slice(prev);
                    *prev = next_prev;
                }
                Engine::Image {
                    morphism,
                    inner,
                    cursor,
                } => {
                    // Pull enough source letters in one go; every image is non-empty.
                    let need = (n - buf.len()).max(1);
                    let end = *cursor + need;
                    inner.with_prefix(end, |src| {
                        for &c in &src[*cursor..end] {
                            buf.extend_from_slice(morphism.image(c).letters());
                        }
                    });
                    *cursor = end;
                }
                Engine::ReversalClosure {
                    inserts,
                    transform,
                    step,
                } => {
                    let current = Word::from_letters_unchecked(buf.clone());
                    buf.extend_from_slice(inserts[*step % inserts.len()].letters());
                    buf.extend_from_slice(transform.apply(&current).letters());
                    *step += 1;
                }
                Engine::Shifted { inner, offset } => {
                    let (start, end) = (*offset + buf.len(), *offset + n);
                    inner.with_prefix(end, |src| buf.extend_from_slice(&src[start..end]));
                }
            }
        }
    }
}

impl fmt::Debug for PrefixStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PrefixStream")
            .field("spec", &self.spec.to_string())
            .finish_non_exhaustive()
    }
}

/// `P_n` of the paperfolding recurrence, for tests and fixtures.
pub fn paperfolding_word(n: usize) -> Word {
    let mut p: Word = "a".parse().expect("literal");
    for _ in 0..n {
        let hat = Transform::ReverseComplement.apply(&p);
        p = p.concat(&"a".parse().expect("literal")).concat(&hat);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    fn stream(text: &str) -> PrefixStream {
        PrefixStream::resolve(text).unwrap()
    }

    #[test]
    fn golden_prefixes() {
        let cases = [
            ("fibonacci", "abaababaabaababaababaabaab"),
            ("phi-F", "abcaabcabcaabcaabcabcaabcabca"),
            ("psi-F", "aabbabaaabbabaabbabaaabbabaaabbab"),
            ("paperfolding", "aabaabbaaabbabbaaabaabbbaabbabbaaaba"),
            ("tau-P", "ababbaababbabaabababbabaabbabaababab"),
            ("berstel4", "abcdbacdabdcbacdabcdbadcabdcba"),
            ("thue-morse", "abbabaab"),
            ("pow:abc", "abcabca"),
            ("fix({a->aa},a)", "aaaa"),
        ];
        for (name, expected) in cases {
            assert_eq!(stream(name).prefix(expected.len()), w(expected), "{name}");
        }
    }

    #[test]
    fn closed_13_first_steps() {
        let s = stream("closed-13");
        let u1 = w("abaabbabaaabbaababbaaabaabbaaababbaaba");
        assert_eq!(
            u1,
            w("abaabbabaaabbaaba").concat(&w("bbaa")).concat(&w("abaabbaaababbaaba"))
        );
        assert_eq!(s.prefix(38), u1);
        let u2 = w("abaabbabaaabbaababbaaabaabbaaababbaabaaabbabaabbabaaabbaabaaabbabaabbaaababbaaba");
        assert_eq!(s.prefix(u2.len()), u2);
    }

    #[test]
    fn paperfolding_levels() {
        assert_eq!(paperfolding_word(1), w("aab"));
        assert_eq!(paperfolding_word(2), w("aabaabb"));
        let s = stream("paperfolding");
        for n in 0..=12 {
            let p = paperfolding_word(n);
            assert_eq!(p.len(), (1 << (n + 1)) - 1);
            assert_eq!(s.prefix(p.len()), p);
        }
    }

    #[test]
    fn shift_examples() {
        assert_eq!(stream("pow:ab").shift(1).prefix(4), w("baba"));
        assert_eq!(stream("fibonacci").shift(1).prefix(5), w("baaba"));
        let fib = stream("fibonacci");
        let same = fib.shift(0);
        for n in [1, 7, 100] {
            assert_eq!(same.prefix(n), fib.prefix(n));
        }
    }

    #[test]
    fn prefix_monotone_for_every_preset() {
        for name in ["fibonacci", "thue-morse", "phi-F", "psi-F", "paperfolding", "tau-P",
                     "berstel4", "closed-15", "closed-13", "pow:aabbab", "shift(psi-F,3)"] {
            let s = stream(name);
            let long = s.prefix(500);
            let fresh = stream(name);
            for n in 1..=500 {
                let p = fresh.prefix(n);
                assert_eq!(p.len(), n);
                assert_eq!(p.letters(), &long.letters()[..n], "{name} at {n}");
            }
        }
    }

    #[test]
    fn fixed_point_property() {
        let s = stream("thue-morse");
        let morphism = Morphism::named("tm").unwrap();
        for n in 1..=1000 {
            let p = s.prefix(n);
            assert!(morphism.apply(&p).unwrap().starts_with(&p));
        }
        let fib = stream("fix(fib,a)");
        assert_eq!(fib.prefix(200), stream("fibonacci").prefix(200));
    }

    #[test]
    fn concurrent_requests_agree() {
        let s = stream("tau-P");
        let expected = stream("tau-P").prefix(4000);
        std::thread::scope(|scope| {
            for t in 0..4 {
                let s = &s;
                let expected = &expected;
                scope.spawn(move || {
                    for n in (1 + t..4000).step_by(97) {
                        assert_eq!(s.prefix(n).letters(), &expected.letters()[..n]);
                    }
                });
            }
        });
    }

    #[test]
    fn rejects_invalid_specs() {
        assert!(PrefixStream::resolve("fix({a->ba,b->a},a)").is_err());
        assert!(PrefixStream::new(GeneratorSpec::Periodic(Word::empty())).is_err());
    }
}
