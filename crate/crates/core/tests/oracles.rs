//! Values frozen from an independent mpmath computation at 50 digits.
//! Sums with harmonic factors were summed directly, using polygamma
//! closed forms for the partial sums and an Euler-Maclaurin tail.

use rug::Float;
use tsum_core::numerics::NumericContext;
use tsum_core::series::Evaluator;
use tsum_core::syntax::{parse_sumspec, parse_value};

const PREC: u32 = 300;

fn ev() -> Evaluator {
    Evaluator::new(NumericContext::new(40, 1_000_000, 12).unwrap())
}

fn expect(got: &Float, want: &str, what: &str) {
    let w = Float::with_val(PREC, Float::parse(want).unwrap());
    let d = Float::with_val(PREC, got - &w).abs().to_f64();
    assert!(d < 1e-40, "{what}: got {got}, oracle {want}, diff {d:e}");
}

#[test]
fn constants() {
    let e = ev();
    for (text, want) in [
        ("Li4half", "0.517479061673899386330758161898862945622377475"),
        ("log2", "0.693147180559945309417232121458176568075500134"),
        ("G", "0.915965594177219015054603514932384110774149374"),
        ("zeta(3)", "1.20205690315959428539973816151144999076498629"),
        ("zeta(5)", "1.03692775514336992633136548645703416805708092"),
        ("hz(3;1/3)", "0.561061199700803776227877977407509284542095313"),
        ("tbar(3)", "7.75156917007495504386907876677534880055632214"),
        ("beta(4)", "0.988944551741105336108422633228377821315860887"),
        ("zeta(3b)", "-0.901542677369695714049803621133587493073739719"),
    ] {
        let v = e.value(&parse_value(text).unwrap()).unwrap();
        expect(v.value(), want, text);
    }
}

#[test]
fn direct_sums() {
    let e = ev();
    for (text, want) in [
        ("T[1;2]", "2.63388930279853654594839558866402110362232702"),
        ("T[2;3]", "1.72335894795343120563760393328210054385461"),
        ("T[1^2;2]", "8.53270469957703808485011316589378637031445"),
        ("M[2;4]", "0.2459880650225823126246720911252568395124"),
        ("Tbar[1;1]", "0.743138143202636964858862580745961247879007"),
        ("z[3b,1]", "0.0877856715686553020365932949977619342150227"),
        ("S[1^3;2]", "41.5233913562432184821387942711876370137252"),
        ("S[1,2;3]", "10.7152745247915501473818536332661598528019"),
    ] {
        let r = e.sum(&parse_sumspec(text).unwrap()).unwrap();
        expect(r.value.value(), want, text);
        assert!(r.value.error_bound() < 1e-38, "{text}: bound {:e}", r.value.error_bound());
    }
}
