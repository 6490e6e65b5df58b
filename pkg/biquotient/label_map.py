import logging

log = logging.getLogger(__name__)


class Labels(object):
    """Maps the internal keys used throughout the code to
    curvature class names and report column headers. The
    purpose of the mapping dictionaries is to decouple the
    variables in the code from the emitted reports, so that
    an edit to a class name or a column label only requires
    a single edit to the label map.
    """

    def __init__(
        self,
        log_level=logging.DEBUG,
    ):
        """Constructs the label class.

        Parameters:

            log_level : logging object
                Sets log level. Default: logging.DEBUG
        """

        # set log level
        self.log_level = log_level
        logging.getLogger().setLevel(log_level)

    def set_eschenburg(self):
        """Defines Eschenburg space labels.
        """
        self.eschenburg = {
            # curvature classes
            'pos': 'POSITIVE',
            'qp': 'QUASI_POSITIVE',
            'e0': 'ALMOST_POSITIVE_E0',
            'w11': 'BOUNDARY_W11',
            'dagger': 'ORBIFOLD_DAGGER',
            'unknown': 'UNKNOWN_NONNEGATIVE',
            # zero locus kinds
            'e0_det': 'E0_DET',
            'dagger_lens': 'DAGGER_LENS',
            # witness directions
            'y1': 'Y1',
            'y3': 'Y3',
        }

        return self.eschenburg

    def set_bazaikin(self):
        """Defines Bazaikin space labels.
        """
        self.bazaikin = {
            'pos': 'POSITIVE',
            'qp': 'QUASI_POSITIVE',
            'ap': 'ALMOST_POSITIVE_11111m1',
            'boundary': 'BOUNDARY_FAMILY',
            'unknown': 'UNKNOWN_NONNEGATIVE',
            # zero locus of the almost positive space
            'a55_zero': 'A55_ZERO',
            'w1': 'W1',
            'w2': 'W2',
        }

        return self.bazaikin

    def set_torus(self):
        """Defines torus quotient labels.
        """
        self.torus = {
            # ineffective kernel
            'trivial': 'trivial',
            'dz2': 'DeltaZ2',
            # zero plane status
            'none': 'NONE',
            'unique': 'UNIQUE',
            'circle': 'CIRCLE',
            # verdicts
            'ap': 'ALMOST_POSITIVE',
            'free': 'NOT_ALMOST_POSITIVE_FREE',
            # special points, in table order
            'points': ['(1,1)', '(1,j)', '(j,1)', '(j,j)'],
            # circle relations
            'z=w': 'z=w',
            'z=w_bar': 'z=w_bar',
        }

        return self.torus

    def set_report(self):
        """Defines report column labels. The column order of
        each list is the order of the CSV output.
        """
        self.report = {
            'columns': {
                'classify': [
                    'family', 'params', 'free', 'class', 'note', 's', 'p1',
                    'isotropy', 'kernel',
                ],
                'scan': [
                    'family', 'params', 'free', 'class', 's', 'p1', 'n',
                    'isotropy', 'kernel', 'pattern',
                ],
                'verify': [
                    'family', 'params', 'campaign', 'sample', 'zero_plane',
                    'witness_valid', 'locus_distance', 'residual',
                    'range_min', 'range_max', 'status', 'agree',
                ],
            },
        }

        return self.report
