from abc import ABC, abstractmethod


# Where a method's coefficients come from: a closed-form published scheme,
# the published two-stage fourth order formula, a published coefficient
# listing, the K-parametrized family, forward Euler or Taylor series, a
# tableau file, or an optimization run.
SOURCES = (
    'published_scheme', 'published_equation', 'published_listing',
    'closed_form_family', 'builtin_basic', 'external_file', 'optimizer'
)


class MethodRecord(ABC):
    """
    Base class for all catalog methods.
    """
    def __init__(self):
        # Basic method information.
        self.name = ''
        self.description = ''

        # Whether the method should be included in the list returned by the
        # list-methods command.
        self.publish = True

        # An optional, internal identifier string that should only be
        # externally accessed through the "id" property.
        self._id = None

        # The order the coefficients were designed for and the SSP-TS
        # coefficient they are claimed to have at the design K.  Both are
        # checked against the tableau by the test suite.
        self.claimed_order = None
        self.claimed_cts = None

        self.source = 'external_file'

        self._tableau = None

    @property
    def id(self):
        if self._id is None:
            return self.name
        else:
            return self._id

    @id.setter
    def id(self, idstr):
        self._id = idstr

    @property
    def tableau(self):
        """
        The method's Tableau, built on first access.
        """
        if self._tableau is None:
            self._tableau = self.buildTableau()

        return self._tableau

    def getMetadata(self):
        """
        Returns a dictionary describing the method.
        """
        t = self.tableau
        md = {}
        md['id'] = self.id
        md['name'] = self.name
        md['description'] = self.description
        md['source'] = self.source
        md['s'] = t.s
        md['variant'] = t.variant
        md['K_design'] = t.design_K
        md['claimed_order'] = self.claimed_order
        md['claimed_cts'] = self.claimed_cts

        return md

    @abstractmethod
    def buildTableau(self):
        """
        Returns the Tableau of this method.
        """
        pass
